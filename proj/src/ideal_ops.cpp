#include "charplab/ideal_ops.hpp"

#include <algorithm>
#include <unordered_map>

#include "charplab/errors.hpp"
#include "charplab/limits.hpp"
#include "charplab/staircase.hpp"
#include "reduction.hpp"

namespace charplab {

namespace {

// A variable name absent from `ring`, built from `stem`.
std::string fresh_name(const PolynomialRing& ring, std::string stem) {
  while (ring.index_of(stem)) stem += "_";
  return stem;
}

std::vector<std::optional<std::size_t>> shifted_map(std::size_t n,
                                                    std::size_t offset) {
  std::vector<std::optional<std::size_t>> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = i + offset;
  return map;
}

void require_same_ring(const Ideal& a, const Ideal& b) {
  if (!a.ring()->same_as(*b.ring())) {
    throw InputError("ideals belong to different rings");
  }
}

bool has_box(const Ideal& a) {
  return detail::pure_power_box(a.ring()->num_variables(), a.generators())
      .has_value();
}

bool all_monomials(std::span<const Polynomial> gens) {
  return std::all_of(gens.begin(), gens.end(),
                     [](const Polynomial& g) { return g.is_monomial(); });
}

// a : f for a single nonzero f.
Ideal colon_element(const Ideal& a, const Polynomial& f) {
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return a;
  if (f.is_constant()) return a;
  const auto gens = a.generators();
  if (f.is_monomial() && all_monomials(gens)) {
    // Monomial quotient: m / gcd(m, f) for each generator m.
    const Monomial& u = f.leading_monomial();
    std::vector<Polynomial> out;
    for (const auto& g : gens) {
      Monomial m = g.leading_monomial();
      for (std::size_t i = 0; i < ring->num_variables(); ++i) {
        m.set(i, m[i] - std::min(m[i], u[i]));
      }
      out.push_back(Polynomial::monomial(ring, m));
    }
    return Ideal(ring, std::move(out));
  }
  if (has_box(a) && a.basis(MonomialOrder::local())->staircase().count() <=
                        kMaxLocalColonLength) {
    return local_colon(a, f);
  }
  if (gens.size() == 1) {
    // (h) : (f) = (h / gcd); the exact case is all callers need cheaply.
    try {
      return Ideal(ring, {divide_exact(gens[0], f)});
    } catch (const InvariantError&) {
    }
  }
  const Ideal both = intersect(a, Ideal(ring, {f}));
  std::vector<Polynomial> out;
  for (const auto& h : both.basis()->elements()) {
    out.push_back(divide_exact(h, f));
  }
  return Ideal(ring, std::move(out));
}

}  // namespace

Ideal local_colon(const Ideal& a, const Polynomial& f) {
  const RingPtr& ring = a.ring();
  if (!f.ring()->same_as(*ring)) {
    throw InputError("polynomial belongs to a different ring");
  }
  if (!has_box(a)) {
    throw InputError("local colon needs a pure power of every variable");
  }
  const auto basis = a.basis(MonomialOrder::local());
  const Staircase stairs = basis->staircase();
  const std::uint64_t len = stairs.count();
  if (len > kMaxLocalColonLength) {
    throw LimitError("local colon limited to " +
                     std::to_string(kMaxLocalColonLength) +
                     " standard monomials");
  }
  std::vector<Monomial> standard;
  standard.reserve(len);
  stairs.for_each_standard(limits().max_degree,
                           [&](const Monomial& m) { standard.push_back(m); });
  std::unordered_map<Monomial, std::size_t, MonomialHash> position;
  for (std::size_t i = 0; i < standard.size(); ++i) position[standard[i]] = i;

  // Column i holds the normal form of f times the i-th standard monomial;
  // the kernel of this matrix is (a : f) / a.
  const std::size_t L = standard.size();
  const GaloisField& F = f.field();
  std::vector<std::uint16_t> m(L * L, 0);
  const Polynomial g = f.with_order(MonomialOrder::local());
  for (std::size_t i = 0; i < L; ++i) {
    check_deadline();
    const Polynomial image = basis->normal_form(g.mul_term(standard[i], 1));
    for (const auto& t : image.terms()) {
      m[position.at(t.monomial) * L + i] = static_cast<std::uint16_t>(t.coeff);
    }
  }
  // Reduced row echelon form.
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(L, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < L && r < L; ++c) {
    std::size_t piv = r;
    while (piv < L && m[piv * L + c] == 0) ++piv;
    if (piv == L) continue;
    if (piv != r) {
      std::swap_ranges(m.begin() + piv * L, m.begin() + (piv + 1) * L,
                       m.begin() + r * L);
    }
    const auto inv = F.inv(m[r * L + c]);
    for (std::size_t k = c; k < L; ++k) {
      m[r * L + k] = static_cast<std::uint16_t>(F.mul(m[r * L + k], inv));
    }
    for (std::size_t i = 0; i < L; ++i) {
      const auto factor = m[i * L + c];
      if (i == r || factor == 0) continue;
      const auto neg = F.neg(factor);
      for (std::size_t k = c; k < L; ++k) {
        if (const auto v = m[r * L + k]; v != 0) {
          m[i * L + k] =
              static_cast<std::uint16_t>(F.add(m[i * L + k], F.mul(neg, v)));
        }
      }
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++r;
  }
  std::vector<Polynomial> gens(a.generators().begin(), a.generators().end());
  for (std::size_t free = 0; free < L; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Term> terms{{standard[free], 1}};
    for (std::size_t row = 0; row < pivot_col.size(); ++row) {
      if (const auto v = m[row * L + free]; v != 0) {
        terms.push_back({standard[pivot_col[row]], F.neg(v)});
      }
    }
    gens.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return Ideal(ring, std::move(gens));
}

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw ArithmeticError("division by the zero polynomial");
  const auto order = f.order();
  const Polynomial d = g.with_order(order);
  const auto& F = f.field();
  const Term lead = d.leading_term();
  const auto inv = F.inv(lead.coeff);
  Polynomial r = f;
  std::vector<Term> quotient;
  while (!r.is_zero()) {
    const Term& t = r.leading_term();
    if (!lead.monomial.divides(t.monomial)) {
      throw InvariantError("inexact polynomial division");
    }
    const Term q{t.monomial / lead.monomial, F.mul(t.coeff, inv)};
    quotient.push_back(q);
    r -= d.mul_term(q.monomial, q.coeff);
  }
  return Polynomial::from_sorted_terms(f.ring(), std::move(quotient), order);
}

bool ideal_equal(const Ideal& a, const Ideal& b, const MonomialOrder& order) {
  require_same_ring(a, b);
  return *a.basis(order) == *b.basis(order);
}

Ideal ideal_sum(const Ideal& a, std::span<const Polynomial> extra) {
  std::vector<Polynomial> gens(a.generators().begin(), a.generators().end());
  for (const auto& f : extra) {
    if (!f.ring()->same_as(*a.ring())) {
      throw InputError("polynomial belongs to a different ring");
    }
    gens.push_back(f);
  }
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  return ideal_sum(a, b.generators());
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) {
    for (const auto& g : b.generators()) gens.push_back(f * g);
  }
  return Ideal(a.ring(), std::move(gens));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  const std::size_t n = ring->num_variables();
  if (n + 1 > kMaxVariables) {
    throw LimitError("intersection needs one extra variable");
  }
  std::vector<std::string> names{fresh_name(*ring, "w")};
  names.insert(names.end(), ring->variables().begin(),
               ring->variables().end());
  const RingPtr big = PolynomialRing::create(ring->field(), names);
  const auto map = shifted_map(n, 1);
  const Polynomial w = Polynomial::variable(big, 0);
  const Polynomial one_minus_w = Polynomial::constant(big, 1) - w;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(w * f.remap(big, map));
  for (const auto& g : b.generators()) {
    gens.push_back(one_minus_w * g.remap(big, map));
  }
  const Ideal small = eliminate(Ideal(big, std::move(gens)), 1);
  // The subring has the original variable names; move back to `ring`.
  const auto identity = shifted_map(n, 0);
  std::vector<Polynomial> out;
  for (const auto& f : small.generators()) out.push_back(f.remap(ring, identity));
  return Ideal(ring, std::move(out));
}

Ideal colon(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  if (b.is_zero()) throw InputError("colon by the zero ideal");
  std::optional<Ideal> result;
  for (const auto& f : b.generators()) {
    Ideal q = colon_element(a, f);
    result = result ? intersect(*result, q) : q;
  }
  return *result;
}

Ideal eliminate(const Ideal& a, std::size_t k) {
  const RingPtr& ring = a.ring();
  const std::size_t n = ring->num_variables();
  if (k < 1 || k >= n) {
    throw InputError("elimination needs 1 <= k < number of variables");
  }
  std::vector<std::string> rest(ring->variables().begin() + k,
                                ring->variables().end());
  const RingPtr sub = PolynomialRing::create(ring->field(), std::move(rest));
  if (a.is_zero()) return Ideal(sub, {});
  std::vector<std::optional<std::size_t>> map(n);
  for (std::size_t i = k; i < n; ++i) map[i] = i - k;
  const std::uint32_t eliminated = (std::uint32_t{1} << k) - 1;
  std::vector<Polynomial> out;
  for (const auto& g : a.basis(MonomialOrder::block(k))->elements()) {
    if ((g.support() & eliminated) == 0) {
      out.push_back(g.remap(sub, map).with_order(MonomialOrder::grevlex()));
    }
  }
  return Ideal(sub, std::move(out));
}

Ideal frobenius_power(const Ideal& a, std::uint64_t e) {
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(f.frobenius(e));
  return Ideal(a.ring(), std::move(gens));
}

Ideal maximal_bracket_power(const RingPtr& ring, std::uint64_t q) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->num_variables(); ++i) {
    Monomial m(ring->num_variables());
    m.set(i, q);
    gens.push_back(Polynomial::monomial(ring, m));
  }
  return Ideal(ring, std::move(gens));
}

std::size_t krull_dim(const Ideal& a) {
  if (a.is_zero()) return a.ring()->num_variables();
  const auto basis = a.basis();
  if (basis->is_unit()) throw InputError("the unit ideal has empty zero set");
  return basis->staircase().dimension();
}

namespace {

// The same ideal with a pure power of every variable among its generators:
// m^L lies in a when L is the colength.
Ideal boxed(const Ideal& a) {
  if (has_box(a)) return a;
  const std::uint64_t len = a.basis()->staircase().count();
  return ideal_sum(a, maximal_bracket_power(a.ring(), std::max<std::uint64_t>(len, 1)));
}

}  // namespace

bool is_m_primary(const Ideal& a) {
  if (!a.inside_maximal() || a.is_zero()) return false;
  if (has_box(a)) return true;
  const auto basis = a.basis();
  const Staircase stairs = basis->staircase();
  if (!stairs.is_finite()) return false;
  // Every variable must be nilpotent in S/a; a pure-power basis element
  // settles it directly, otherwise x_i^len must reduce to zero.
  const RingPtr& ring = a.ring();
  const std::uint64_t len = stairs.count();
  for (std::size_t i = 0; i < ring->num_variables(); ++i) {
    const std::uint64_t b = (*stairs.box())[i];
    bool pure = false;
    for (const auto& g : basis->elements()) {
      if (g.is_monomial() && g.leading_monomial()[i] == b &&
          g.leading_monomial().degree() == b) {
        pure = true;
        break;
      }
    }
    if (pure) continue;
    // Square and multiply inside S/a.
    const Polynomial x = Polynomial::variable(ring, i);
    Polynomial acc = Polynomial::constant(ring, 1);
    Polynomial base = x;
    for (std::uint64_t k = len; k; k >>= 1) {
      if (k & 1) acc = basis->normal_form(acc * base);
      if (k > 1) base = basis->normal_form(base * base);
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

std::uint64_t colength(const Ideal& a) {
  if (!a.inside_maximal()) {
    throw InputError("colength needs an ideal inside the maximal ideal");
  }
  if (!is_m_primary(a)) {
    throw InputError("colength needs an ideal primary to the maximal ideal");
  }
  // Lowest-degree leading terms keep the work near the origin, where a
  // perturbed generator looks like its initial form.
  if (has_box(a)) return a.basis(MonomialOrder::local())->staircase().count();
  return a.basis()->staircase().count();
}

std::uint64_t m_power_in(const Ideal& a) {
  if (!is_m_primary(a)) {
    throw InputError("ideal is not primary to the maximal ideal");
  }
  // The local leading ideal is the leading ideal of the initial-form ideal
  // a*. A degree-N monomial in a* lies in a + m^{N+1}, so by Nakayama
  // m^N is in a exactly when no standard monomial has degree N or more.
  const Ideal b = boxed(a);
  return b.basis(MonomialOrder::local())->staircase().max_standard_degree() + 1;
}

SubalgebraPresentation subalgebra_presentation(
    std::span<const Polynomial> gens, const std::string& prefix) {
  if (gens.empty()) throw InputError("subalgebra needs generators");
  const RingPtr& ring = gens.front().ring();
  for (const auto& g : gens) {
    if (!g.ring()->same_as(*ring)) {
      throw InputError("generators belong to different rings");
    }
    if (g.is_constant()) {
      throw InputError("subalgebra generators must be nonconstant");
    }
  }
  const std::size_t n = ring->num_variables();
  const std::size_t s = gens.size();
  if (n + s > kMaxVariables) {
    throw LimitError("presentation needs more than " +
                     std::to_string(kMaxVariables) + " variables");
  }
  std::vector<std::string> names = ring->variables();
  std::string stem = prefix;
  auto clashes = [&] {
    for (std::size_t i = 1; i <= s; ++i) {
      if (ring->index_of(stem + std::to_string(i))) return true;
    }
    return false;
  };
  while (clashes()) stem += "_";
  for (std::size_t i = 1; i <= s; ++i) names.push_back(stem + std::to_string(i));
  const RingPtr big = PolynomialRing::create(ring->field(), names);
  const auto map = shifted_map(n, 0);
  std::vector<Polynomial> rel;
  for (std::size_t i = 0; i < s; ++i) {
    rel.push_back(Polynomial::variable(big, n + i) - gens[i].remap(big, map));
  }
  Ideal kernel = eliminate(Ideal(big, std::move(rel)), n);
  return {kernel.ring(), kernel};
}

bool is_squarefree_hypersurface(const Polynomial& f) {
  if (f.is_constant()) {
    throw InputError("squarefree test needs a nonconstant polynomial");
  }
  const RingPtr& ring = f.ring();
  const std::size_t n = ring->num_variables();
  std::vector<Polynomial> gens{f};
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial d = f.derivative(i);
    if (!d.is_zero()) any = true;
    gens.push_back(std::move(d));
  }
  // Over a perfect field, vanishing partials make f a p-th power.
  if (!any) return false;
  const Ideal sing(ring, std::move(gens));
  if (sing.is_unit()) return true;
  return krull_dim(sing) + 2 <= n;
}

}  // namespace charplab
