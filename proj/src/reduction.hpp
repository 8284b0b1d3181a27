#pragma once

// Internal: heap-based multivariate division shared by Buchberger and
// normal forms.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "charplab/polynomial.hpp"

namespace charplab::detail {

/// Leading-monomial lookup for a growing list of monic divisors.
class DivisorIndex {
 public:
  explicit DivisorIndex(std::size_t nvars);

  /// Registers divisors[id]; ids must be added in increasing order.
  void add(const Polynomial& divisor);
  void deactivate(std::size_t id) { active_[id] = false; }
  void activate(std::size_t id) { active_[id] = true; }
  bool active(std::size_t id) const { return active_[id]; }

  /// Index of a registered active divisor whose leading monomial divides
  /// m, or -1. Monomial divisors are preferred since they cost nothing.
  long find(const Monomial& m) const;

  std::uint64_t signature(const Monomial& m) const noexcept;

 private:
  std::size_t nvars_;
  unsigned bits_per_var_;
  std::vector<std::uint64_t> thresholds_;
  std::vector<Monomial> leads_;
  std::vector<std::uint64_t> sev_;
  std::vector<bool> active_;
  std::vector<bool> is_monomial_;
  // pure_[i]: least e with x_i^e a registered monomial divisor, or 0.
  std::vector<std::uint64_t> pure_;
  std::vector<std::size_t> monomial_ids_;
  std::vector<std::size_t> other_ids_;
};

/// Reduces a sum of scaled, shifted polynomial streams by a set of monic
/// divisors, emitting the remainder in descending order.
class Reducer {
 public:
  Reducer(const RingPtr& ring, const MonomialOrder& order);

  /// Adds coeff * mult * terms[start..].
  void add(std::span<const Term> terms, std::size_t start,
           const Monomial& mult, GaloisField::Element coeff);

  /// Runs to completion and returns the fully reduced remainder.
  Polynomial run(const std::vector<Polynomial>& divisors,
                 const DivisorIndex& index);

 private:
  struct Stream {
    const Term* terms;
    std::size_t size;
    std::size_t pos;
    Monomial mult;
    GaloisField::Element coeff;
  };
  struct Entry {
    Monomial mono;
    std::uint32_t stream;
  };

  void push(std::uint32_t stream);

  RingPtr ring_;
  MonomialOrder order_;
  const GaloisField& field_;
  std::vector<Stream> streams_;
  std::vector<Entry> heap_;
};

/// Monomials x^a with a_i < bounds[i], listed in increasing order.
struct BoxTables {
  std::vector<std::uint64_t> bounds;
  std::vector<std::uint64_t> strides;  // box index = sum a_i * strides[i]
  std::vector<std::uint32_t> by_rank;  // rank -> box index
  std::vector<std::uint32_t> rank;     // box index -> rank
};

/// Largest box supported by the dense reducer.
inline constexpr std::uint64_t kMaxBoxSize = std::uint64_t{1} << 24;

/// Least pure-power exponent of each variable among the monomial
/// generators, or nullopt when some variable has none.
std::optional<std::vector<std::uint64_t>> pure_power_box(
    std::size_t nvars, std::span<const Polynomial> generators);

/// Shared tables for a box and an order; a few recent ones are cached.
std::shared_ptr<const BoxTables> box_tables(
    const std::vector<std::uint64_t>& bounds, const MonomialOrder& order);

/// Division for ideals that contain x_i^{bounds[i]} for every i. Terms
/// outside the box are dropped on arrival, so the running remainder is a
/// dense coefficient vector indexed by rank and the next leading term is
/// found by a linear scan.
class BoxReducer {
 public:
  BoxReducer(const RingPtr& ring, std::shared_ptr<const BoxTables> tables);

  /// Adds coeff * mult * terms[start..].
  void add(std::span<const Term> terms, std::size_t start,
           const Monomial& mult, GaloisField::Element coeff);

  /// Fully reduced remainder; leaves the reducer empty for reuse.
  Polynomial run(const std::vector<Polynomial>& divisors,
                 const DivisorIndex& index, const MonomialOrder& order);

 private:
  RingPtr ring_;
  const GaloisField& field_;
  std::shared_ptr<const BoxTables> tables_;
  std::vector<std::uint16_t> dense_;
  std::int64_t lo_;
  std::int64_t hi_ = -1;
};

}  // namespace charplab::detail
