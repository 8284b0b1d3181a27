#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace charplab {

/// The finite field F_q, q = p^m, realised as F_p[g]/(modulus).
///
/// Elements are encoded as integers in [0, q): the code of
/// c_0 + c_1 g + ... + c_{m-1} g^{m-1} is sum c_i p^i. Multiplication and
/// inversion go through discrete log tables built once at construction, so
/// q is capped at 2^16.
class GaloisField {
 public:
  using Element = std::uint32_t;

  static constexpr std::uint64_t kMaxOrder = 1u << 16;

  /// Builds F_{p^m}. `modulus` lists the coefficients of a monic degree-m
  /// polynomial from the constant term up; when empty and m > 1 the
  /// lexicographically first irreducible monic polynomial is used.
  /// Throws InputError when p is not prime or the modulus is reducible.
  static std::shared_ptr<const GaloisField> create(
      std::uint32_t p, std::uint32_t m = 1,
      std::vector<std::uint32_t> modulus = {});

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept {
    return modulus_;
  }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }
  /// The class of the adjoined root g; only meaningful when m > 1.
  Element generator() const noexcept { return m_ > 1 ? p_ : 0; }

  Element from_integer(std::int64_t value) const noexcept;
  Element from_coords(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords(Element a) const;

  Element add(Element a, Element b) const noexcept {
    if (m_ == 1) {
      Element s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    return add_digits(a, b);
  }
  Element neg(Element a) const noexcept {
    if (a == 0) return 0;
    if (m_ == 1) return p_ - a;
    if (p_ == 2) return a;
    return neg_digits(a);
  }
  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }
  Element mul(Element a, Element b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) {
      return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    return exp_[log_[a] + log_[b]];
  }
  /// Throws ArithmeticError on a == 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t k) const noexcept;
  /// a^(p^e).
  Element frobenius(Element a, std::uint64_t e) const noexcept;

  /// Renders a as a polynomial in g, e.g. "g + 2" or "4".
  std::string to_string(Element a) const;

  bool same_as(const GaloisField& other) const noexcept {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

 private:
  GaloisField(std::uint32_t p, std::uint32_t m,
              std::vector<std::uint32_t> modulus);

  Element add_digits(Element a, Element b) const noexcept;
  Element neg_digits(Element a) const noexcept;
  Element slow_mul(Element a, Element b) const;

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  // exp_ has 2(q-1) entries so that log a + log b never needs reduction.
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Element> inverse_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

bool is_prime(std::uint64_t n) noexcept;

/// True when the monic polynomial (low-to-high coefficients) has no monic
/// factor of degree 1..deg/2 over F_p.
bool is_irreducible_mod_p(std::span<const std::uint32_t> poly,
                          std::uint32_t p);

/// A value-semantic element of a GaloisField.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, GaloisField::Element code)
      : field_(std::move(field)), code_(code) {}

  static FieldElement from_integer(FieldPtr field, std::int64_t value) {
    auto code = field->from_integer(value);
    return {std::move(field), code};
  }

  const FieldPtr& field() const noexcept { return field_; }
  GaloisField::Element code() const noexcept { return code_; }
  bool is_zero() const noexcept { return code_ == 0; }
  std::vector<std::uint32_t> coords() const { return field_->coords(code_); }

  FieldElement operator+(const FieldElement& o) const {
    return {field_, field_->add(code_, checked(o))};
  }
  FieldElement operator-(const FieldElement& o) const {
    return {field_, field_->sub(code_, checked(o))};
  }
  FieldElement operator*(const FieldElement& o) const {
    return {field_, field_->mul(code_, checked(o))};
  }
  FieldElement operator/(const FieldElement& o) const {
    return {field_, field_->div(code_, checked(o))};
  }
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  FieldElement inverse() const { return {field_, field_->inv(code_)}; }
  FieldElement pow(std::uint64_t k) const {
    return {field_, field_->pow(code_, k)};
  }
  FieldElement frobenius(std::uint64_t e) const {
    return {field_, field_->frobenius(code_, e)};
  }

  bool operator==(const FieldElement& o) const noexcept {
    return code_ == o.code_;
  }

  std::string to_string() const { return field_->to_string(code_); }

 private:
  GaloisField::Element checked(const FieldElement& o) const;

  FieldPtr field_;
  GaloisField::Element code_ = 0;
};

}  // namespace charplab
