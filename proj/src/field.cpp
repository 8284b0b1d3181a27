#include "charplab/field.hpp"

#include <algorithm>
#include <numeric>

#include "charplab/errors.hpp"

namespace charplab {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

// Remainder of `num` modulo the monic `den` over F_p; both low-to-high.
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> num,
                                    std::span<const std::uint32_t> den,
                                    std::uint32_t p) {
  const std::size_t dd = den.size() - 1;
  while (num.size() > dd) {
    const std::uint64_t lead = num.back();
    if (lead != 0) {
      const std::size_t shift = num.size() - 1 - dd;
      for (std::size_t i = 0; i <= dd; ++i) {
        const std::uint64_t sub = (lead * den[i]) % p;
        num[shift + i] =
            static_cast<std::uint32_t>((num[shift + i] + p - sub) % p);
      }
    }
    num.pop_back();
  }
  return num;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible_mod_p(std::span<const std::uint32_t> poly,
                          std::uint32_t p) {
  const std::size_t deg = poly.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    // Enumerate the p^k monic divisors of degree k.
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    std::vector<std::uint32_t> divisor(k + 1, 0);
    divisor[k] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      auto rem = poly_mod({poly.begin(), poly.end()}, divisor, p);
      if (std::all_of(rem.begin(), rem.end(),
                      [](std::uint32_t v) { return v == 0; })) {
        return false;
      }
    }
  }
  return true;
}

std::shared_ptr<const GaloisField> GaloisField::create(
    std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus) {
  if (p < 2 || p > (1u << 16) || !is_prime(p)) {
    throw InputError("field characteristic " + std::to_string(p) +
                     " is not a prime in [2, 65536]");
  }
  if (m < 1) throw InputError("field extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw LimitError("field order p^m exceeds 65536");
    }
  }
  if (m == 1) {
    if (!modulus.empty() &&
        !(modulus.size() == 2 && modulus[1] == 1 && modulus[0] < p)) {
      throw InputError("a prime field takes no modulus");
    }
    modulus = {0, 1};
  } else if (modulus.empty()) {
    // Lexicographically first irreducible monic polynomial of degree m.
    std::vector<std::uint32_t> candidate(m + 1, 0);
    candidate[m] = 1;
    std::uint64_t limit = q;
    bool found = false;
    for (std::uint64_t code = 0; code < limit && !found; ++code) {
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < m; ++i) {
        candidate[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (candidate[0] != 0 && is_irreducible_mod_p(candidate, p)) {
        found = true;
      }
    }
    if (!found) throw InvariantError("no irreducible modulus found");
    modulus = candidate;
  } else {
    if (modulus.size() != m + 1 || modulus.back() != 1) {
      throw InputError("modulus must be monic of degree " +
                       std::to_string(m));
    }
    for (auto c : modulus) {
      if (c >= p) throw InputError("modulus coefficient out of range");
    }
    if (!is_irreducible_mod_p(modulus, p)) {
      throw InputError("modulus is reducible over F_" + std::to_string(p));
    }
  }
  return std::shared_ptr<const GaloisField>(
      new GaloisField(p, m, std::move(modulus)));
}

GaloisField::GaloisField(std::uint32_t p, std::uint32_t m,
                         std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
  q_ = 1;
  for (std::uint32_t i = 0; i < m_; ++i) q_ *= p_;

  if (m_ == 1) {
    inverse_.assign(q_, 0);
    for (Element a = 1; a < q_; ++a) {
      if (inverse_[a] != 0) continue;
      // Fermat: a^(p-2).
      std::uint64_t base = a, result = 1, k = p_ - 2;
      while (k) {
        if (k & 1) result = result * base % p_;
        base = base * base % p_;
        k >>= 1;
      }
      inverse_[a] = static_cast<Element>(result);
      inverse_[result] = a;
    }
    return;
  }

  // Find a primitive element: order exactly q - 1.
  const std::uint64_t group = q_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [this](Element a, std::uint64_t k) {
    Element result = 1;
    while (k) {
      if (k & 1) result = slow_mul(result, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return result;
  };
  Element primitive = 0;
  for (Element c = 2; c < q_ && primitive == 0; ++c) {
    bool ok = true;
    for (auto f : factors) {
      if (slow_pow(c, group / f) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) primitive = c;
  }
  if (primitive == 0) {
    if (q_ == 2) primitive = 1;
    else throw InvariantError("no primitive element found");
  }
  exp_.assign(2 * group, 0);
  log_.assign(q_, 0);
  Element x = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = x;
    exp_[i + group] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, primitive);
  }
}

GaloisField::Element GaloisField::slow_mul(Element a, Element b) const {
  auto ca = coords(a), cb = coords(b);
  std::vector<std::uint32_t> prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    for (std::uint32_t j = 0; j < m_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
    }
  }
  auto rem = poly_mod(std::move(prod), modulus_, p_);
  rem.resize(m_, 0);
  return from_coords(rem);
}

GaloisField::Element GaloisField::from_integer(
    std::int64_t value) const noexcept {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

GaloisField::Element GaloisField::from_coords(
    std::span<const std::uint32_t> c) const {
  if (c.size() > m_) throw InputError("too many field coordinates");
  Element code = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw InputError("field coordinate out of range");
    code = code * p_ + c[i];
  }
  return code;
}

std::vector<std::uint32_t> GaloisField::coords(Element a) const {
  std::vector<std::uint32_t> out(m_, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

GaloisField::Element GaloisField::add_digits(Element a,
                                             Element b) const noexcept {
  Element out = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    Element d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    out += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

GaloisField::Element GaloisField::neg_digits(Element a) const noexcept {
  Element out = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    Element d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    a /= p_;
  }
  return out;
}

GaloisField::Element GaloisField::inv(Element a) const {
  if (a == 0) throw ArithmeticError("division by zero in F_q");
  if (m_ == 1) return inverse_[a];
  const std::uint32_t group = q_ - 1;
  return exp_[(group - log_[a]) % group];
}

GaloisField::Element GaloisField::pow(Element a,
                                      std::uint64_t k) const noexcept {
  if (k == 0) return 1;
  if (a == 0) return 0;
  if (m_ > 1) {
    const std::uint64_t group = q_ - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % group)) % group];
  }
  std::uint64_t base = a, result = 1;
  while (k) {
    if (k & 1) result = result * base % p_;
    base = base * base % p_;
    k >>= 1;
  }
  return static_cast<Element>(result);
}

GaloisField::Element GaloisField::frobenius(Element a,
                                            std::uint64_t e) const noexcept {
  if (m_ == 1 || a == 0) return a;
  std::uint64_t power = 1;
  for (std::uint64_t i = 0; i < e % m_; ++i) power *= p_;
  return pow(a, power);
}

std::string GaloisField::to_string(Element a) const {
  if (m_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto c = coords(a);
  std::string out;
  for (std::size_t i = m_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

GaloisField::Element FieldElement::checked(const FieldElement& o) const {
  if (field_.get() != o.field_.get() && !field_->same_as(*o.field_)) {
    throw InputError("field elements belong to different fields");
  }
  return o.code_;
}

}  // namespace charplab
