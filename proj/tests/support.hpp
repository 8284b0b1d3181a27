#pragma once

#include <random>
#include <string>
#include <vector>

#include "charplab/parse.hpp"
#include "charplab/polynomial.hpp"
#include "oracles.hpp"

namespace support {

using namespace charplab;

inline RingPtr make_ring(std::uint32_t p, std::vector<std::string> vars,
                         std::uint32_t m = 1) {
  return PolynomialRing::create(GaloisField::create(p, m), std::move(vars));
}

inline Polynomial P(const std::string& text, const RingPtr& ring) {
  return parse_polynomial(text, ring);
}

/// Prime fields only: element codes are the residues themselves.
inline oracle::Poly to_oracle(const Polynomial& f) {
  oracle::Poly out;
  const std::size_t n = f.ring()->num_variables();
  for (const auto& t : f.terms()) {
    std::vector<oracle::u32> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = t.monomial[i];
    out[e] = t.coeff;
  }
  return out;
}

inline std::vector<oracle::Poly> to_oracle(std::span<const Polynomial> fs) {
  std::vector<oracle::Poly> out;
  for (const auto& f : fs) out.push_back(to_oracle(f));
  return out;
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t n,
                                std::uint64_t degree) {
  std::vector<std::uint64_t> e(n, 0);
  for (std::uint64_t k = 0; k < degree; ++k) e[rng() % n] += 1;
  return Monomial(e);
}

/// Up to max_terms terms of degree in [min_degree, max_degree].
inline Polynomial random_poly(std::mt19937_64& rng, const RingPtr& ring,
                              std::uint64_t min_degree,
                              std::uint64_t max_degree,
                              std::size_t max_terms) {
  const std::size_t n = ring->num_variables();
  const std::uint64_t q = ring->field()->order();
  std::vector<Term> terms;
  const std::size_t count = 1 + rng() % max_terms;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t d =
        min_degree + rng() % (max_degree - min_degree + 1);
    terms.push_back({random_monomial(rng, n, d),
                     static_cast<GaloisField::Element>(1 + rng() % (q - 1))});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

inline Polynomial random_nonzero(std::mt19937_64& rng, const RingPtr& ring,
                                 std::uint64_t min_degree,
                                 std::uint64_t max_degree,
                                 std::size_t max_terms) {
  for (;;) {
    auto f = random_poly(rng, ring, min_degree, max_degree, max_terms);
    if (!f.is_zero()) return f;
  }
}

}  // namespace support
