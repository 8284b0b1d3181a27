#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charplab/field.hpp"
#include "charplab/monomial.hpp"

namespace charplab {

/// F_q[x_1, ..., x_n] with named variables.
class PolynomialRing {
 public:
  static std::shared_ptr<const PolynomialRing> create(
      FieldPtr field, std::vector<std::string> variables);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t num_variables() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept {
    return variables_;
  }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool same_as(const PolynomialRing& o) const noexcept {
    return this == &o ||
           (field_->same_as(*o.field_) && variables_ == o.variables_);
  }

 private:
  PolynomialRing(FieldPtr field, std::vector<std::string> variables)
      : field_(std::move(field)), variables_(std::move(variables)) {}

  FieldPtr field_;
  std::vector<std::string> variables_;
};

using RingPtr = std::shared_ptr<const PolynomialRing>;

struct Term {
  Monomial monomial;
  GaloisField::Element coeff;
};

/// Sparse polynomial: nonzero terms sorted in descending order under the
/// polynomial's monomial order. Equality compares term sets and ignores
/// the order the terms are kept in.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring,
                      MonomialOrder order = MonomialOrder::grevlex());

  static Polynomial constant(RingPtr ring, GaloisField::Element c,
                             MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial integer(RingPtr ring, std::int64_t c,
                            MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial variable(RingPtr ring, std::size_t index,
                             MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial monomial(RingPtr ring, const Monomial& m,
                             GaloisField::Element c = 1,
                             MonomialOrder order = MonomialOrder::grevlex());
  /// Combines repeated monomials, drops zero coefficients and sorts.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::grevlex());
  /// Trusts that `terms` are already distinct, nonzero and sorted.
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms,
                                      MonomialOrder order);

  const RingPtr& ring() const noexcept { return ring_; }
  const GaloisField& field() const noexcept { return *ring_->field(); }
  const MonomialOrder& order() const noexcept { return order_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].monomial.is_one());
  }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// All terms share one total degree; true for zero.
  bool is_homogeneous() const noexcept;

  /// Throws InputError on the zero polynomial.
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  GaloisField::Element leading_coefficient() const {
    return leading_term().coeff;
  }
  GaloisField::Element constant_term() const noexcept;
  GaloisField::Element coefficient(const Monomial& m) const noexcept;

  std::uint64_t total_degree() const noexcept;
  std::uint64_t degree_in(std::size_t var) const noexcept;
  /// Bitmask of the variables occurring in some term.
  std::uint32_t support() const noexcept;

  Polynomial with_order(const MonomialOrder& order) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(GaloisField::Element c) const;
  /// c * m * this.
  Polynomial mul_term(const Monomial& m, GaloisField::Element c) const;
  Polynomial monic() const;

  /// Binary exponentiation.
  Polynomial pow(std::uint64_t k) const;
  /// this^(p^e), computed coefficientwise and by scaling exponents.
  Polynomial frobenius(std::uint64_t e) const;
  /// Drops every term whose exponent in some variable i is >= bounds[i].
  Polynomial truncated(std::span<const std::uint64_t> bounds) const;
  Polynomial derivative(std::size_t var) const;

  /// Ring map x_i -> images[i] into the ring of the images.
  Polynomial substitute(std::span<const Polynomial> images) const;
  /// Re-expresses the polynomial in `target`, sending variable i to
  /// variable var_map[i]. Throws InputError when a variable has no image.
  Polynomial remap(const RingPtr& target,
                   std::span<const std::optional<std::size_t>> var_map) const;

  bool operator==(const Polynomial& o) const;

  /// Grammar-conformant text, terms in descending order.
  std::string to_string() const;

 private:
  void require_same_ring(const Polynomial& o) const;

  RingPtr ring_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

/// f^k modulo the monomial ideal (x_1^{b_1}, ..., x_n^{b_n}). The exponent
/// is split into base-p digits so that only Frobenius images of f are
/// multiplied, truncating after every product.
Polynomial pow_truncated(const Polynomial& f, std::uint64_t k,
                         std::span<const std::uint64_t> bounds);

/// Polynomial x_i with the given name, for convenience in tests and tools.
Polynomial var(const RingPtr& ring, std::string_view name);

}  // namespace charplab
