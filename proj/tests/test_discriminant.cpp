#include <doctest.h>

#include "charplab/discriminant.hpp"
#include "charplab/errors.hpp"
#include "support.hpp"

using namespace charplab;
using support::make_ring;
using support::P;

namespace {

Polynomial trace_of(const PolyMatrix& m) {
  Polynomial t(m[0][0].ring());
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

PolyMatrix product(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = a.size();
  PolyMatrix c(n, std::vector<Polynomial>(n, Polynomial(a[0][0].ring())));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

PolyMatrix transpose(const PolyMatrix& a) {
  PolyMatrix t = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) t[i][j] = a[j][i];
  }
  return t;
}

// Monic in z of degree n, other coefficients random in the base variables.
Polynomial random_monic(std::mt19937_64& rng, const RingPtr& R, std::size_t z,
                        std::uint64_t n) {
  const std::size_t vars = R->num_variables();
  Polynomial f = Polynomial::variable(R, z).pow(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    if (rng() % 3 == 0) continue;
    auto c = support::random_poly(rng, R, 0, 2, 3);
    // Drop z from the coefficient.
    std::vector<Term> terms;
    for (const auto& t : c.terms()) {
      if (t.monomial[z] == 0) terms.push_back(t);
    }
    std::vector<std::uint64_t> e(vars, 0);
    e[z] = k;
    f += Polynomial::from_terms(R, std::move(terms)) *
         Polynomial::monomial(R, Monomial(e), 1);
  }
  return f;
}

}  // namespace

TEST_CASE("multiplication matrices") {
  auto R = make_ring(5, {"u", "z"});
  const FiniteExtension ext(P("z^2 - u", R), "z");
  CHECK(ext.degree() == 2);
  const auto m = ext.mult_matrix(P("z", R));
  CHECK(m[0][0].is_zero());
  CHECK(m[0][1] == P("u", R));
  CHECK(m[1][0] == P("1", R));
  CHECK(m[1][1].is_zero());
  const auto id = ext.mult_matrix(P("1", R));
  CHECK(id[0][0] == P("1", R));
  CHECK(id[1][1] == P("1", R));
  CHECK(id[0][1].is_zero());
  for (const auto& row : ext.mult_matrix(ext.relation())) {
    for (const auto& x : row) CHECK(x.is_zero());
  }
  CHECK(ext.reduce(P("z^3", R)) ==
        std::vector<Polynomial>{Polynomial(R), P("u", R)});
}

TEST_CASE("presentation errors") {
  auto R = make_ring(5, {"u", "z"});
  CHECK_THROWS_AS(FiniteExtension(P("2*z^2 - u", R), "z"), InputError);
  CHECK_THROWS_AS(FiniteExtension(P("u*z^2 + z", R), "z"), InputError);
  CHECK_THROWS_AS(FiniteExtension(P("u", R), "z"), InputError);
  CHECK_THROWS_AS(FiniteExtension(P("z^2", R), "w"), InputError);
  const FiniteExtension ext(P("z^2 - u", R), "z");
  CHECK_THROWS_AS(disc_congruence_check(ext, P("u^5*z^2", R), 5), InputError);
}

TEST_CASE("closed-form discriminants") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto R = make_ring(p, {"u", "z"});
    const FiniteExtension ext(P("z^2 - u", R), "z");
    const auto t = ext.trace_matrix();
    CHECK(t[0][0] == P("2", R));
    CHECK(t[0][1].is_zero());
    CHECK(t[1][1] == P("2*u", R));
    CHECK(discriminant(ext) == P("4*u", R));
  }
  auto R2 = make_ring(2, {"u", "z"});
  CHECK(discriminant(FiniteExtension(P("z^2 + z + u", R2), "z")) == P("1", R2));
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"u", "z"});
    const std::string text = "z^" + std::to_string(p) + " - u";
    CHECK(discriminant(FiniteExtension(P(text, R), "z")).is_zero());
  }
  auto R = make_ring(5, {"u", "z"});
  CHECK(discriminant(FiniteExtension(P("z + u", R), "z")) == P("1", R));
  CHECK(order_of_vanishing(P("4*u + u^3", R)) == 1u);
  CHECK(order_of_vanishing(Polynomial(R)) == std::nullopt);
}

TEST_CASE("trace matrix entries are traces of multiplication matrices") {
  std::mt19937_64 rng(21);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"u", "v", "z"});
    for (int trial = 0; trial < 5; ++trial) {
      const std::uint64_t n = 1 + rng() % 4;
      const FiniteExtension ext(random_monic(rng, R, 2, n), "z");
      const auto t = ext.trace_matrix();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(t[i][j] == t[j][i]);
          const auto zk = Polynomial::variable(R, 2).pow(i + j);
          CHECK(t[i][j] == trace_of(ext.mult_matrix(zk)));
        }
      }
    }
  }
}

TEST_CASE("Bareiss determinants of constant matrices match elimination") {
  std::mt19937_64 rng(8);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    auto R = make_ring(p, {"u"});
    const oracle::Zp F{p};
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + rng() % 5;
      PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(R)));
      std::vector<std::vector<oracle::u32>> ref(n, std::vector<oracle::u32>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          ref[i][j] = rng() % 3 == 0 ? 0 : static_cast<oracle::u32>(rng() % p);
          m[i][j] = Polynomial::integer(R, ref[i][j]);
        }
      }
      CHECK(bareiss_determinant(m) ==
            Polynomial::integer(R, oracle::det(ref, F)));
    }
  }
  CHECK_THROWS_AS(bareiss_determinant({}), InputError);
}

TEST_CASE("discriminants specialize to the Sylvester discriminant") {
  std::mt19937_64 rng(99);
  int nonzero = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"u", "v", "z"});
    const oracle::Zp F{p};
    for (int trial = 0; trial < 12; ++trial) {
      const std::uint64_t n = 1 + rng() % 4;
      const auto f = random_monic(rng, R, 2, n);
      const auto d = support::to_oracle(discriminant(FiniteExtension(f, "z")));
      const auto of = support::to_oracle(f);
      for (int point = 0; point < 4; ++point) {
        const std::vector<oracle::u32> t{static_cast<oracle::u32>(rng() % p),
                                         static_cast<oracle::u32>(rng() % p),
                                         0};
        std::vector<oracle::u32> c(n + 1, 0);
        for (const auto& [e, coeff] : of) {
          std::vector<oracle::u32> at = t;
          auto base = e;
          base[2] = 0;
          c[e[2]] = F.add(c[e[2]], oracle::evaluate({{base, coeff}}, at, F));
        }
        const auto expected = oracle::sylvester_discriminant(c, F);
        CAPTURE(f.to_string());
        CHECK(oracle::evaluate(d, t, F) == expected);
        if (expected != 0) ++nonzero;
      }
    }
  }
  CHECK(nonzero > 0);
}

TEST_CASE("separability detection on the curated examples") {
  const oracle::Zp F5{5};
  auto R = make_ring(5, {"u", "z"});
  CHECK_FALSE(discriminant(FiniteExtension(P("z^2 - u", R), "z")).is_zero());
  // z^2 - 1 at u = 1.
  CHECK(oracle::sylvester_discriminant({4, 0, 1}, F5) != 0);
  CHECK(discriminant(FiniteExtension(P("z^5 - u", R), "z")).is_zero());
  // z^5 - 2 at u = 2: the derivative vanishes identically.
  CHECK(oracle::sylvester_discriminant({3, 0, 0, 0, 0, 1}, F5) == 0);
  const oracle::Zp F2{2};
  // z^2 + z + 1 at u = 1.
  CHECK(oracle::sylvester_discriminant({1, 1, 1}, F2) == 1);
}

TEST_CASE("basis changes scale the discriminant by a square") {
  std::mt19937_64 rng(4);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto R = make_ring(p, {"u", "v", "z"});
    const oracle::Zp F{p};
    for (int trial = 0; trial < 6; ++trial) {
      const std::uint64_t n = 2 + rng() % 3;
      const FiniteExtension ext(random_monic(rng, R, 2, n), "z");
      const auto t = ext.trace_matrix();
      const auto d = bareiss_determinant(t);
      // Gram matrix of the basis sum_k P[k][i] z^k for invertible P over F_p.
      std::vector<std::vector<oracle::u32>> ref;
      do {
        ref.assign(n, std::vector<oracle::u32>(n));
        for (auto& row : ref) {
          for (auto& x : row) x = static_cast<oracle::u32>(rng() % p);
        }
      } while (oracle::det(ref, F) == 0);
      PolyMatrix change(n, std::vector<Polynomial>(n, Polynomial(R)));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          change[i][j] = Polynomial::integer(R, ref[i][j]);
        }
      }
      const auto gram = product(product(transpose(change), t), change);
      const auto s = oracle::det(ref, F);
      CHECK(bareiss_determinant(gram) == d * Polynomial::integer(R, F.mul(s, s)));
    }
  }
}

TEST_CASE("congruence examples") {
  auto R5 = make_ring(5, {"u", "z"});
  const FiniteExtension ext(P("z^2 - u", R5), "z");
  const auto r = disc_congruence_check(ext, P("-u^5", R5), 5);
  CHECK(r.base == P("4*u", R5));
  CHECK(r.perturbed == P("4*u + 4*u^5", R5));
  CHECK(r.perturbation_order == 5u);
  CHECK(r.congruence_order == 5u);
  CHECK(r.pass);
  CHECK_FALSE(disc_congruence_check(ext, P("-u^5", R5), 6).pass);

  const auto same = disc_congruence_check(ext, Polynomial(R5), 100);
  CHECK(same.congruence_order == std::nullopt);
  CHECK(same.perturbation_order == std::nullopt);
  CHECK(same.pass);

  // z^2 + b z + c in characteristic 2 has traces 0, b, b^2, so its
  // discriminant is b^2; here b = 1 + u^3.
  auto R2 = make_ring(2, {"u", "z"});
  const FiniteExtension as(P("z^2 + z + u", R2), "z");
  const auto r2 = disc_congruence_check(as, P("u^3*z", R2), 3);
  CHECK(r2.base == P("1", R2));
  CHECK(r2.perturbed == P("1 + u^6", R2));
  CHECK(r2.perturbation_order == 3u);
  CHECK(r2.congruence_order == 6u);
  CHECK(r2.pass);
}

TEST_CASE("perturbations in m^M keep the discriminant modulo m^M") {
  std::mt19937_64 rng(2024);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto R = make_ring(p, {"u", "v", "z"});
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t n = 1 + rng() % 3;
      const FiniteExtension ext(random_monic(rng, R, 2, n), "z");
      const std::uint64_t M = 1 + rng() % 5;
      Polynomial eps(R);
      for (std::uint64_t k = 0; k < n; ++k) {
        auto c = support::random_poly(rng, R, M, M + 2, 2);
        std::vector<Term> terms;
        for (const auto& t : c.terms()) {
          if (t.monomial[2] == 0) terms.push_back(t);
        }
        eps += Polynomial::from_terms(R, std::move(terms)) *
               Polynomial::variable(R, 2).pow(k);
      }
      const auto r = disc_congruence_check(ext, eps, M);
      CAPTURE(ext.relation().to_string());
      CAPTURE(eps.to_string());
      CHECK(r.pass);
      if (r.perturbation_order) CHECK(*r.perturbation_order >= M);
      if (r.congruence_order) CHECK(*r.congruence_order >= M);
      CHECK(r.base == discriminant(ext));
    }
  }
}
