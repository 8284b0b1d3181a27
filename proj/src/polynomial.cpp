#include "charplab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "charplab/errors.hpp"
#include "charplab/limits.hpp"

namespace charplab {

RingPtr PolynomialRing::create(FieldPtr field,
                               std::vector<std::string> variables) {
  if (!field) throw InputError("ring requires a field");
  if (variables.empty()) throw InputError("ring requires at least one variable");
  if (variables.size() > kMaxVariables) {
    throw LimitError("at most " + std::to_string(kMaxVariables) +
                     " variables are supported");
  }
  std::unordered_set<std::string> seen;
  for (const auto& v : variables) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) ||
                       v[0] == '_')) {
      throw InputError("invalid variable name '" + v + "'");
    }
    for (char c : v) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
        throw InputError("invalid variable name '" + v + "'");
      }
    }
    if (v == "g") throw InputError("'g' is reserved for the field generator");
    if (!seen.insert(v).second) {
      throw InputError("duplicate variable name '" + v + "'");
    }
  }
  return RingPtr(new PolynomialRing(std::move(field), std::move(variables)));
}

std::optional<std::size_t> PolynomialRing::index_of(
    std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

bool within(const Monomial& m, std::span<const std::uint64_t> bounds) {
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (m[i] >= bounds[i]) return false;
  }
  return true;
}

void sort_terms(std::vector<Term>& terms, const MonomialOrder& order) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return order.compare(a.monomial, b.monomial) > 0;
  });
}

// Product of two polynomials, optionally dropping monomials outside a box.
std::vector<Term> multiply_terms(const Polynomial& a, const Polynomial& b,
                                 std::span<const std::uint64_t> bounds) {
  const auto& F = a.field();
  std::unordered_map<Monomial, GaloisField::Element, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 22));
  const std::size_t n = a.ring()->num_variables();
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      if (!bounds.empty()) {
        bool inside = true;
        for (std::size_t i = 0; i < n; ++i) {
          if (std::uint64_t{ta.monomial[i]} + tb.monomial[i] >= bounds[i]) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
      }
      const auto c = F.mul(ta.coeff, tb.coeff);
      auto [it, inserted] = acc.try_emplace(ta.monomial * tb.monomial, c);
      if (!inserted) it->second = F.add(it->second, c);
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) out.push_back({m, c});
  }
  sort_terms(out, a.order());
  return out;
}

std::string monomial_text(const Monomial& m, const PolynomialRing& ring) {
  std::string out;
  for (std::size_t i = 0; i < ring.num_variables(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.variables()[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(RingPtr ring, MonomialOrder order)
    : ring_(std::move(ring)), order_(order) {
  if (!ring_) throw InputError("polynomial requires a ring");
}

Polynomial Polynomial::constant(RingPtr ring, GaloisField::Element c,
                                MonomialOrder order) {
  Polynomial p(std::move(ring), order);
  if (c != 0) p.terms_.push_back({Monomial(p.ring_->num_variables()), c});
  return p;
}

Polynomial Polynomial::integer(RingPtr ring, std::int64_t c,
                               MonomialOrder order) {
  auto code = ring->field()->from_integer(c);
  return constant(std::move(ring), code, order);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index,
                                MonomialOrder order) {
  if (index >= ring->num_variables()) {
    throw InputError("variable index out of range");
  }
  Monomial m(ring->num_variables());
  m.set(index, 1);
  return monomial(std::move(ring), m, 1, order);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m,
                                GaloisField::Element c, MonomialOrder order) {
  Polynomial p(std::move(ring), order);
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms,
                                  MonomialOrder order) {
  Polynomial p(std::move(ring), order);
  const auto& F = *p.ring_->field();
  sort_terms(terms, order);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(t);
    }
  }
  p.terms_ = std::move(out);
  return p;
}

Polynomial Polynomial::from_sorted_terms(RingPtr ring, std::vector<Term> terms,
                                         MonomialOrder order) {
  Polynomial p(std::move(ring), order);
  p.terms_ = std::move(terms);
  return p;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw InputError("zero polynomial has no leading term");
  return terms_.front();
}

GaloisField::Element Polynomial::constant_term() const noexcept {
  if (!terms_.empty() && terms_.back().monomial.is_one()) {
    return terms_.back().coeff;
  }
  return 0;
}

GaloisField::Element Polynomial::coefficient(
    const Monomial& m) const noexcept {
  for (const auto& t : terms_) {
    if (t.monomial == m) return t.coeff;
  }
  return 0;
}

std::uint64_t Polynomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::uint64_t Polynomial::degree_in(std::size_t var) const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max<std::uint64_t>(d, t.monomial[var]);
  return d;
}

std::uint32_t Polynomial::support() const noexcept {
  std::uint32_t mask = 0;
  for (const auto& t : terms_) mask |= t.monomial.support();
  return mask;
}

Polynomial Polynomial::with_order(const MonomialOrder& order) const {
  if (order == order_) return *this;
  Polynomial p(*this);
  p.order_ = order;
  sort_terms(p.terms_, order);
  return p;
}

void Polynomial::require_same_ring(const Polynomial& o) const {
  if (!ring_->same_as(*o.ring_)) {
    throw InputError("polynomials belong to different rings");
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_ring(o);
  if (!(o.order_ == order_)) return *this + o.with_order(order_);
  const auto& F = field();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    const int c = order_.compare(terms_[i].monomial, o.terms_[j].monomial);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      const auto s = F.add(terms_[i].coeff, o.terms_[j].coeff);
      if (s != 0) out.push_back({terms_[i].monomial, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), terms_.begin() + i, terms_.end());
  out.insert(out.end(), o.terms_.begin() + j, o.terms_.end());
  return from_sorted_terms(ring_, std::move(out), order_);
}

Polynomial Polynomial::operator-() const {
  Polynomial p(*this);
  const auto& F = field();
  for (auto& t : p.terms_) t.coeff = F.neg(t.coeff);
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_ring(o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_, order_);
  if (o.size() == 1) return mul_term(o.terms_[0].monomial, o.terms_[0].coeff);
  if (size() == 1) {
    return o.with_order(order_).mul_term(terms_[0].monomial, terms_[0].coeff);
  }
  const Polynomial rhs = o.with_order(order_);
  return from_sorted_terms(ring_, multiply_terms(*this, rhs, {}), order_);
}

Polynomial Polynomial::scaled(GaloisField::Element c) const {
  if (c == 0) return Polynomial(ring_, order_);
  Polynomial p(*this);
  const auto& F = field();
  for (auto& t : p.terms_) t.coeff = F.mul(t.coeff, c);
  return p;
}

Polynomial Polynomial::mul_term(const Monomial& m,
                                GaloisField::Element c) const {
  if (c == 0) return Polynomial(ring_, order_);
  Polynomial p(*this);
  const auto& F = field();
  // Multiplication by a monomial preserves the order of the terms.
  for (auto& t : p.terms_) {
    t.monomial = t.monomial * m;
    t.coeff = F.mul(t.coeff, c);
  }
  return p;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(field().inv(leading_coefficient()));
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  Polynomial result = constant(ring_, 1, order_);
  Polynomial base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::frobenius(std::uint64_t e) const {
  const auto& F = field();
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (q > kDegreeCeiling / F.characteristic()) {
      throw LimitError("p^e exceeds the supported exponent range");
    }
    q *= F.characteristic();
  }
  Polynomial p(*this);
  for (auto& t : p.terms_) {
    t.monomial = t.monomial.scaled(q);
    t.coeff = F.frobenius(t.coeff, e);
  }
  // Scaling every exponent by q keeps the order of any of the supported
  // monomial orders.
  return p;
}

Polynomial Polynomial::truncated(std::span<const std::uint64_t> bounds) const {
  Polynomial p(ring_, order_);
  for (const auto& t : terms_) {
    if (within(t.monomial, bounds)) p.terms_.push_back(t);
  }
  return p;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  const auto& F = field();
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const auto e = t.monomial[var];
    if (e == 0) continue;
    const auto c = F.mul(t.coeff, F.from_integer(e % F.characteristic()));
    if (c == 0) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    out.push_back({m, c});
  }
  return from_terms(ring_, std::move(out), order_);
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (images.size() != ring_->num_variables()) {
    throw InputError("substitution needs one image per variable");
  }
  const RingPtr& target = images.front().ring();
  Polynomial result(target, order_);
  std::vector<std::vector<Polynomial>> powers(images.size());
  for (const auto& t : terms_) {
    Polynomial term = Polynomial::constant(target, t.coeff, order_);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const std::size_t e = t.monomial[i];
      if (e == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Polynomial::constant(target, 1, order_));
      while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
      term = term * cache[e];
    }
    result += term;
  }
  return result;
}

Polynomial Polynomial::remap(
    const RingPtr& target,
    std::span<const std::optional<std::size_t>> var_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  const std::size_t n = ring_->num_variables();
  for (const auto& t : terms_) {
    Monomial m(target->num_variables());
    for (std::size_t i = 0; i < n; ++i) {
      if (t.monomial[i] == 0) continue;
      if (i >= var_map.size() || !var_map[i]) {
        throw InputError("variable '" + ring_->variables()[i] +
                         "' has no image in the target ring");
      }
      m.set(*var_map[i], t.monomial[i]);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(target, std::move(out), order_);
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!ring_->same_as(*o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  const Polynomial& rhs = o.order_ == order_ ? o : o.with_order(order_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].monomial == rhs.terms_[i].monomial) ||
        terms_[i].coeff != rhs.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto& F = field();
  const std::uint32_t p = F.characteristic();
  std::string out;
  auto emit = [&](std::uint32_t digit, std::size_t gpow, const Monomial& m) {
    const bool negative = p > 2 && digit > p / 2;
    const std::uint32_t shown = negative ? p - digit : digit;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string body;
    if (shown != 1 || (gpow == 0 && m.is_one())) body = std::to_string(shown);
    if (gpow > 0) {
      if (!body.empty()) body += "*";
      body += "g";
      if (gpow > 1) body += "^" + std::to_string(gpow);
    }
    const auto mono = monomial_text(m, *ring_);
    if (!mono.empty()) {
      if (!body.empty()) body += "*";
      body += mono;
    }
    out += body;
  };
  for (const auto& t : terms_) {
    if (F.degree() == 1) {
      emit(t.coeff, 0, t.monomial);
      continue;
    }
    const auto c = F.coords(t.coeff);
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] != 0) emit(c[i], i, t.monomial);
    }
  }
  return out;
}

Polynomial pow_truncated(const Polynomial& f, std::uint64_t k,
                         std::span<const std::uint64_t> bounds) {
  const auto& ring = f.ring();
  const auto order = f.order();
  const std::uint64_t p = f.field().characteristic();
  auto times = [&](const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(ring, order);
    return Polynomial::from_sorted_terms(ring, multiply_terms(a, b, bounds),
                                         order);
  };
  Polynomial result = Polynomial::constant(ring, 1, order).truncated(bounds);
  Polynomial frob = f.truncated(bounds);
  while (k) {
    const std::uint64_t digit = k % p;
    k /= p;
    if (digit) {
      Polynomial factor = Polynomial::constant(ring, 1, order);
      Polynomial base = frob;
      std::uint64_t d = digit;
      while (d) {
        if (d & 1) factor = times(factor, base);
        d >>= 1;
        if (d) base = times(base, base);
      }
      result = times(result, factor);
      if (result.is_zero()) return result;
    }
    if (k) {
      // Next Frobenius image, dropping terms that leave the box.
      std::vector<Term> next;
      for (const auto& t : frob.terms()) {
        bool inside = true;
        for (std::size_t i = 0; i < bounds.size(); ++i) {
          if (std::uint64_t{t.monomial[i]} * p >= bounds[i]) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        next.push_back({t.monomial.scaled(p), f.field().frobenius(t.coeff, 1)});
      }
      frob = Polynomial::from_sorted_terms(ring, std::move(next), order);
      if (frob.is_zero()) return Polynomial(ring, order);
    }
  }
  return result;
}

Polynomial var(const RingPtr& ring, std::string_view name) {
  auto idx = ring->index_of(name);
  if (!idx) throw InputError("unknown variable '" + std::string(name) + "'");
  return Polynomial::variable(ring, *idx);
}

bool Polynomial::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  const std::uint64_t d = terms_.front().monomial.degree();
  for (const auto& t : terms_) {
    if (t.monomial.degree() != d) return false;
  }
  return true;
}

}  // namespace charplab
