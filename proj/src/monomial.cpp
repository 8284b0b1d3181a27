#include "charplab/monomial.hpp"

#include <charconv>

#include "charplab/errors.hpp"
#include "charplab/limits.hpp"

namespace charplab {

namespace {

void check_degree(std::uint64_t degree) {
  if (degree > limits().max_degree) {
    throw LimitError("monomial degree " + std::to_string(degree) +
                     " exceeds the degree limit " +
                     std::to_string(limits().max_degree));
  }
}

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                  std::size_t hi) noexcept {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint32_t>(nvars)) {
  if (nvars > kMaxVariables) {
    throw LimitError("at most " + std::to_string(kMaxVariables) +
                     " variables are supported");
  }
}

Monomial::Monomial(std::span<const std::uint64_t> exponents)
    : Monomial(exponents.size()) {
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

void Monomial::set(std::size_t i, std::uint64_t value) {
  const std::uint64_t degree = degree_ - exp_[i] + value;
  check_degree(degree);
  exp_[i] = static_cast<Exponent>(value);
  degree_ = degree;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  r.degree_ = degree_ + o.degree_;
  check_degree(r.degree_);
  for (std::size_t i = 0; i < nvars_; ++i) r.exp_[i] += o.exp_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  r.degree_ = degree_ - o.degree_;
  for (std::size_t i = 0; i < nvars_; ++i) r.exp_[i] -= o.exp_[i];
  return r;
}

Monomial Monomial::scaled(std::uint64_t k) const {
  if (k != 0 && degree_ > limits().max_degree / k) {
    throw LimitError("Frobenius power exceeds the degree limit");
  }
  Monomial r(*this);
  r.degree_ = degree_ * k;
  check_degree(r.degree_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    r.exp_[i] = static_cast<Exponent>(exp_[i] * k);
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    r.exp_[i] = exp_[i] > o.exp_[i] ? exp_[i] : o.exp_[i];
    d += r.exp_[i];
  }
  r.degree_ = d;
  return r;
}

std::uint32_t Monomial::support() const noexcept {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (exp_[i] != 0) mask |= 1u << i;
  }
  return mask;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ nvars_;
  for (std::size_t i = 0; i < nvars_; ++i) {
    h ^= exp_[i] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

MonomialOrder MonomialOrder::parse(const std::string& text) {
  if (text == "grevlex") return grevlex();
  if (text == "lex") return lex();
  if (text == "local") return local();
  if (text.rfind("block:", 0) == 0) {
    std::size_t k = 0;
    const char* first = text.data() + 6;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc() && ptr == last && k >= 1) return block(k);
  }
  throw InputError("unknown monomial order '" + text + "'");
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::grevlex:
      return "grevlex";
    case Kind::lex:
      return "lex";
    case Kind::local:
      return "local";
    case Kind::block:
      return "block:" + std::to_string(block_);
  }
  return "grevlex";
}

int MonomialOrder::compare(const Monomial& a,
                           const Monomial& b) const noexcept {
  const std::size_t n = a.num_variables();
  switch (kind_) {
    case Kind::grevlex: {
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = n; i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      }
      return 0;
    }
    case Kind::local: {
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? -1 : 1;
      for (std::size_t i = n; i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      }
      return 0;
    }
    case Kind::lex: {
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    }
    case Kind::block: {
      const std::size_t k = block_ < n ? block_ : n;
      if (int c = grevlex_range(a, b, 0, k); c != 0) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return 0;
}

}  // namespace charplab
