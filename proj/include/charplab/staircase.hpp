#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "charplab/monomial.hpp"

namespace charplab {

/// The set of standard monomials of a monomial ideal, described by its
/// minimal generators (corners).
class Staircase {
 public:
  /// Any generating set of the monomial ideal; it is minimized here.
  Staircase(std::size_t nvars, std::vector<Monomial> generators);

  std::size_t num_variables() const noexcept { return nvars_; }
  const std::vector<Monomial>& corners() const noexcept { return corners_; }
  bool is_unit() const noexcept;
  bool is_standard(const Monomial& m) const noexcept;

  /// True when every variable has a pure-power corner, i.e. finitely many
  /// standard monomials.
  bool is_finite() const noexcept { return box_.has_value(); }
  /// Exponents of the pure-power corners, when finite.
  const std::optional<std::vector<std::uint64_t>>& box() const noexcept {
    return box_;
  }

  /// Number of standard monomials. Throws InputError when infinite.
  std::uint64_t count() const;
  /// Largest total degree of a standard monomial. Requires is_finite().
  std::uint64_t max_standard_degree() const;
  /// Numbers of standard monomials of each degree 0..max_degree.
  std::vector<std::uint64_t> count_by_degree(std::uint64_t max_degree) const;
  /// Visits every standard monomial of degree at most max_degree.
  void for_each_standard(std::uint64_t max_degree,
                         const std::function<void(const Monomial&)>& f) const;

  /// Largest number of variables whose monomials are all standard.
  std::size_t dimension() const;

 private:
  std::uint64_t count_by_columns() const;
  std::uint64_t count_by_search() const;

  std::size_t nvars_;
  std::vector<Monomial> corners_;
  std::optional<std::vector<std::uint64_t>> box_;
};

}  // namespace charplab
