#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "charplab/ideal_ops.hpp"

namespace charplab {

/// R = S/J with m = (x_1, ..., x_n); J must lie in m.
class QuotientPresentation {
 public:
  QuotientPresentation(RingPtr ring, Ideal defining);
  /// S itself.
  static QuotientPresentation regular(const RingPtr& ring);

  const RingPtr& ring() const noexcept { return ring_; }
  const Ideal& defining() const noexcept { return defining_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t characteristic() const noexcept {
    return ring_->field()->characteristic();
  }

 private:
  RingPtr ring_;
  Ideal defining_;
  std::size_t dim_;
};

/// One row of a Frobenius-indexed series: value at q = p^e and value / q^d.
struct SeriesRow {
  std::uint64_t e;
  std::uint64_t q;
  std::uint64_t value;
  mpq_class normalized;
};

/// Hilbert-Kunz lengths or splitting numbers for e = 1, 2, ...
struct InvariantSeries {
  std::uint64_t p;
  std::size_t d;
  std::vector<SeriesRow> rows;
};
using HKSeries = InvariantSeries;
using SplittingSeries = InvariantSeries;

struct NuRow {
  std::uint64_t e;
  std::uint64_t q;
  std::uint64_t nu;
  mpq_class lower;  // nu / q
  mpq_class upper;  // (nu + 1) / q
};

struct NuSeries {
  std::uint64_t p;
  std::vector<NuRow> rows;
};

/// One Richardson step on the normalized values of the last rows.
struct Estimate {
  mpq_class value;
  mpq_class spread;
  /// Only two rows were available, so no spread could be measured.
  bool single_step = false;
};

struct ConvergenceDiagnostic {
  /// dev_e = |v_{e+1} - p^d v_e| / p^{e(d-1)} for consecutive rows.
  std::vector<mpq_class> deviations;
  mpq_class constant;  // max deviation
};

/// Each f_i lies in m and strictly drops the dimension of S/(J, f_1..f_i).
bool parameter_check(const QuotientPresentation& R,
                     std::span<const Polynomial> f);

/// l(R / m^[p^e]).
std::uint64_t hk_length(const QuotientPresentation& R, std::uint64_t e);
HKSeries hk_series(const QuotientPresentation& R, std::uint64_t e_max);
Estimate ehk_estimate(const HKSeries& series);

/// Hilbert-Samuel multiplicity from the d-th differences of l(R/m^s).
std::uint64_t hs_multiplicity(const QuotientPresentation& R);

/// a_e(R) = l(((J^[q] : J) + m^[q]) / m^[q]).
std::uint64_t splitting_number(const QuotientPresentation& R, std::uint64_t e);
SplittingSeries splitting_series(const QuotientPresentation& R,
                                 std::uint64_t e_max);
Estimate fsig_estimate(const SplittingSeries& series);

/// nu_e(f) = max{t : f^t not in m^[p^e]} in the polynomial ring of f.
NuSeries nu_series(const Polynomial& f, std::uint64_t e_max);
/// [nu_e / q, (nu_e + 1) / q] at the last row.
std::pair<mpq_class, mpq_class> fpt_estimate(const NuSeries& series);

ConvergenceDiagnostic convergence_diagnostic(const InvariantSeries& series);

/// p^e, throwing LimitError past the exponent ceiling.
std::uint64_t prime_power(std::uint64_t p, std::uint64_t e);

}  // namespace charplab
