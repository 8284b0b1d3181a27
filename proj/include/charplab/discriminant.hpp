#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "charplab/polynomial.hpp"

namespace charplab {

/// Square matrix of polynomials, row-major.
using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// A[z]/(f) with f monic in z of degree n, free over A with basis
/// 1, z, ..., z^{n-1}. Elements of A are the polynomials of the ring that
/// do not involve z, so A may be the field itself when z is the only
/// variable.
class FiniteExtension {
 public:
  FiniteExtension(const Polynomial& f, std::string_view z);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t z() const noexcept { return z_; }
  const Polynomial& relation() const noexcept { return f_; }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }

  /// Coefficients in A of g mod f on the power basis.
  std::vector<Polynomial> reduce(const Polynomial& g) const;
  /// Column i holds the coordinates of g z^i.
  PolyMatrix mult_matrix(const Polynomial& g) const;
  /// Tr(z^{i+j}) for 0 <= i, j < n.
  PolyMatrix trace_matrix() const;

 private:
  std::vector<Polynomial> z_coefficients(const Polynomial& g) const;

  RingPtr ring_;
  std::size_t z_;
  Polynomial f_;
  std::vector<Polynomial> coeffs_;  // f = sum coeffs_[k] z^k
};

/// Fraction-free elimination with exact division at every step.
Polynomial bareiss_determinant(PolyMatrix m);

/// det of the trace matrix; a polynomial free of z.
Polynomial discriminant(const FiniteExtension& ext);

/// Lowest total degree of a term of d, or nullopt for d = 0.
std::optional<std::uint64_t> order_of_vanishing(const Polynomial& d);

struct CongruenceReport {
  Polynomial base;
  Polynomial perturbed;
  /// Order of the perturbation itself: least degree among its terms in the
  /// variables other than z.
  std::optional<std::uint64_t> perturbation_order;
  /// Largest n' with base = perturbed mod m_A^{n'}; nullopt means equal.
  std::optional<std::uint64_t> congruence_order;
  std::uint64_t target;
  bool pass;
};

/// Compares the discriminants of f and f + eps modulo powers of m_A.
CongruenceReport disc_congruence_check(const FiniteExtension& ext,
                                       const Polynomial& eps,
                                       std::uint64_t n_target);

}  // namespace charplab
