#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "charplab/groebner.hpp"

namespace charplab {

/// Exact quotient f / g; throws InvariantError when g does not divide f.
Polynomial divide_exact(const Polynomial& f, const Polynomial& g);

/// Same reduced basis under `order`.
bool ideal_equal(const Ideal& a, const Ideal& b,
                 const MonomialOrder& order = MonomialOrder::grevlex());

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, std::span<const Polynomial> extra);
Ideal ideal_product(const Ideal& a, const Ideal& b);

/// Intersection by eliminating a tag variable w from w*a + (1 - w)*b.
Ideal intersect(const Ideal& a, const Ideal& b);

/// a : b, as the intersection of the quotients a : f over generators f of b.
Ideal colon(const Ideal& a, const Ideal& b);

/// Largest quotient handled by local_colon.
inline constexpr std::uint64_t kMaxLocalColonLength = 4096;

/// a : f by linear algebra on the standard monomials of a, for an ideal
/// with a pure power of every variable among its generators. Throws
/// LimitError past kMaxLocalColonLength standard monomials.
Ideal local_colon(const Ideal& a, const Polynomial& f);

/// The ideal a ∩ k[x_{k+1}, ..., x_n], returned in the ring of the last
/// n - k variables.
Ideal eliminate(const Ideal& a, std::size_t k);

/// a^[p^e], generated by the p^e-th powers of the generators.
Ideal frobenius_power(const Ideal& a, std::uint64_t e);

/// (x_1^q, ..., x_n^q).
Ideal maximal_bracket_power(const RingPtr& ring, std::uint64_t q);

/// Krull dimension of S/a; throws InputError for the unit ideal.
std::size_t krull_dim(const Ideal& a);

/// True when a is primary to (x_1, ..., x_n).
bool is_m_primary(const Ideal& a);

/// dim_{F_q} S/a for a primary to the maximal ideal at the origin.
std::uint64_t colength(const Ideal& a);

/// Least N >= 1 with every monomial of degree N in a.
std::uint64_t m_power_in(const Ideal& a);

struct SubalgebraPresentation {
  RingPtr ring;  // one variable per generator
  Ideal kernel;
};

/// Kernel of F_q[a_1, ..., a_s] -> S, a_i -> gens[i]. Variables are named
/// `prefix`1 .. `prefix`s.
SubalgebraPresentation subalgebra_presentation(
    std::span<const Polynomial> gens, const std::string& prefix = "a");

/// Reducedness test for S/(f) over a perfect field.
bool is_squarefree_hypersurface(const Polynomial& f);

}  // namespace charplab
