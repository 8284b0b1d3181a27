#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "charplab/polynomial.hpp"
#include "charplab/staircase.hpp"

namespace charplab {

namespace detail {
class DivisorIndex;
}

/// Reduced Groebner basis: monic elements, no term of any element divisible
/// by another element's leading monomial, sorted by increasing leading
/// monomial. Two bases of the same ideal under the same order are equal
/// element by element.
class GroebnerBasis {
 public:
  /// `walls` are pure powers in the ideal that normal forms may also
  /// divide by; under the local order they keep reduction finite.
  GroebnerBasis(RingPtr ring, MonomialOrder order,
                std::vector<Polynomial> elements,
                std::vector<Polynomial> walls = {});

  const RingPtr& ring() const noexcept { return ring_; }
  const MonomialOrder& order() const noexcept { return order_; }
  std::span<const Polynomial> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool is_unit() const noexcept;
  bool is_zero() const noexcept { return elements_.empty(); }

  std::vector<Monomial> leading_monomials() const;

  /// Fully reduced remainder of f; zero exactly when f lies in the ideal.
  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  /// True when the monomial is in the ideal (its normal form vanishes).
  bool contains_monomial(const Monomial& m) const;

  Staircase staircase() const;

  bool operator==(const GroebnerBasis& o) const;

 private:
  RingPtr ring_;
  MonomialOrder order_;
  std::vector<Polynomial> elements_;
  std::vector<Polynomial> reducers_;  // elements_, then the walls
  std::shared_ptr<const detail::DivisorIndex> index_;
};

using BasisPtr = std::shared_ptr<const GroebnerBasis>;

/// How Buchberger reduces. `box` keeps remainders as dense vectors over
/// the box cut out by pure powers of every variable among the generators;
/// `automatic` picks it when such a box exists and is of moderate size.
enum class ReductionEngine { automatic, sparse, box };

/// Buchberger's algorithm with the normal selection strategy and the
/// Gebauer-Moeller installation of both criteria. Honors limits(). The
/// local order requires a pure power of every variable among the
/// generators.
GroebnerBasis buchberger(const RingPtr& ring,
                         std::span<const Polynomial> generators,
                         const MonomialOrder& order,
                         ReductionEngine engine = ReductionEngine::automatic);

/// An ideal given by generators, memoizing one reduced basis per order.
/// Copies share the cache.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators);

  static Ideal unit(const RingPtr& ring);
  /// (x_1, ..., x_n).
  static Ideal maximal(const RingPtr& ring);

  const RingPtr& ring() const noexcept { return state_->ring; }
  std::span<const Polynomial> generators() const noexcept {
    return state_->generators;
  }
  bool is_zero() const noexcept { return state_->generators.empty(); }

  /// Memoized reduced basis; thread safe.
  BasisPtr basis(const MonomialOrder& order = MonomialOrder::grevlex()) const;

  bool contains(const Polynomial& f) const { return basis()->contains(f); }
  bool is_unit() const { return basis()->is_unit(); }
  /// True when every generator vanishes at the origin.
  bool inside_maximal() const noexcept;

  std::string to_string() const;

 private:
  struct State {
    RingPtr ring;
    std::vector<Polynomial> generators;
    mutable std::mutex mutex;
    mutable std::map<std::pair<int, std::size_t>, BasisPtr> cache;
  };
  std::shared_ptr<State> state_;
};

}  // namespace charplab
