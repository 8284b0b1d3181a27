#include "charplab/invariants.hpp"

#include <algorithm>
#include <optional>

#include "charplab/errors.hpp"
#include "charplab/limits.hpp"

namespace charplab {

namespace {

// Standard-monomial count of an ideal whose generators include a bracket
// power of m. Such an ideal lives at the origin, so the local order counts
// the same quotient.
std::uint64_t count_quotient(const Ideal& a) {
  return a.basis(MonomialOrder::local())->staircase().count();
}

mpq_class power_q(std::uint64_t q, std::size_t d) {
  mpz_class r = 1;
  for (std::size_t i = 0; i < d; ++i) r *= static_cast<unsigned long>(q);
  return mpq_class(r);
}

std::uint64_t checked_power(std::uint64_t base, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (base != 0 && r > ~std::uint64_t{0} / base) {
      throw LimitError("q^n exceeds 64 bits");
    }
    r *= base;
  }
  return r;
}

Estimate richardson(const InvariantSeries& s) {
  if (s.rows.size() < 2) throw InputError("estimate needs at least two rows");
  for (std::size_t i = 1; i < s.rows.size(); ++i) {
    if (s.rows[i].e != s.rows[i - 1].e + 1) {
      throw InputError("series rows must have consecutive e");
    }
  }
  const mpq_class p(static_cast<unsigned long>(s.p));
  auto step = [&](std::size_t k) {
    mpq_class r = (p * s.rows[k + 1].normalized - s.rows[k].normalized) /
                  (p - 1);
    r.canonicalize();
    return r;
  };
  const std::size_t last = s.rows.size() - 2;
  Estimate out;
  out.value = step(last);
  if (last == 0) {
    out.spread = 0;
    out.single_step = true;
  } else {
    out.spread = abs(out.value - step(last - 1));
  }
  return out;
}

std::vector<Polynomial> degree_monomials(const RingPtr& ring,
                                         std::uint64_t s) {
  const std::size_t n = ring->num_variables();
  std::vector<Polynomial> out;
  Monomial m(n);
  auto rec = [&](auto& self, std::size_t var, std::uint64_t left) -> void {
    if (var + 1 == n) {
      m.set(var, left);
      out.push_back(Polynomial::monomial(ring, m));
      m.set(var, 0);
      return;
    }
    for (std::uint64_t e = 0; e <= left; ++e) {
      m.set(var, e);
      self(self, var + 1, left - e);
    }
    m.set(var, 0);
  };
  rec(rec, 0, s);
  return out;
}

}  // namespace

std::uint64_t prime_power(std::uint64_t p, std::uint64_t e) {
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (q > kDegreeCeiling / p) {
      throw LimitError("p^e exceeds the supported exponent range");
    }
    q *= p;
  }
  return q;
}

QuotientPresentation::QuotientPresentation(RingPtr ring, Ideal defining)
    : ring_(std::move(ring)), defining_(std::move(defining)) {
  if (!defining_.ring()->same_as(*ring_)) {
    throw InputError("defining ideal belongs to a different ring");
  }
  if (!defining_.inside_maximal()) {
    throw InputError("defining ideal must lie in the maximal ideal");
  }
  dim_ = krull_dim(defining_);
}

QuotientPresentation QuotientPresentation::regular(const RingPtr& ring) {
  return QuotientPresentation(ring, Ideal(ring, {}));
}

bool parameter_check(const QuotientPresentation& R,
                     std::span<const Polynomial> f) {
  for (const auto& g : f) {
    if (!g.ring()->same_as(*R.ring())) {
      throw InputError("parameter belongs to a different ring");
    }
    if (g.constant_term() != 0) {
      throw InputError("parameter " + g.to_string() + " is a unit");
    }
  }
  std::size_t previous = R.dim();
  std::vector<Polynomial> gens(R.defining().generators().begin(),
                               R.defining().generators().end());
  for (const auto& g : f) {
    if (previous == 0) return false;
    gens.push_back(g);
    const std::size_t d = krull_dim(Ideal(R.ring(), gens));
    if (d >= previous) return false;
    previous = d;
  }
  return true;
}

std::uint64_t hk_length(const QuotientPresentation& R, std::uint64_t e) {
  if (e < 1) throw InputError("e must be at least 1");
  const std::uint64_t q = prime_power(R.characteristic(), e);
  const Ideal m_q = maximal_bracket_power(R.ring(), q);
  return count_quotient(ideal_sum(R.defining(), m_q));
}

HKSeries hk_series(const QuotientPresentation& R, std::uint64_t e_max) {
  HKSeries s{R.characteristic(), R.dim(), {}};
  for (std::uint64_t e = 1; e <= e_max; ++e) {
    check_deadline();
    const std::uint64_t q = prime_power(s.p, e);
    const std::uint64_t len = hk_length(R, e);
    mpq_class norm(mpz_class(static_cast<unsigned long>(len)),
                   power_q(q, s.d).get_num());
    norm.canonicalize();
    s.rows.push_back({e, q, len, norm});
  }
  return s;
}

Estimate ehk_estimate(const HKSeries& series) { return richardson(series); }
Estimate fsig_estimate(const SplittingSeries& series) {
  return richardson(series);
}

std::uint64_t hs_multiplicity(const QuotientPresentation& R) {
  constexpr std::uint64_t kMaxS = 60;
  constexpr int kWindow = 3;
  const std::size_t d = R.dim();
  const RingPtr& ring = R.ring();
  const auto gens = R.defining().generators();
  const bool homogeneous =
      std::all_of(gens.begin(), gens.end(),
                  [](const Polynomial& g) { return g.is_homogeneous(); });

  // lengths[s] = l(S / (J + m^s)), lengths[0] = 0.
  std::vector<mpz_class> lengths{0};
  std::vector<std::uint64_t> hilbert;
  std::optional<Staircase> stairs;
  if (homogeneous) {
    stairs = R.defining().is_zero() ? Staircase(ring->num_variables(), {})
                                    : R.defining().basis()->staircase();
  }
  auto length_at = [&](std::uint64_t s) -> mpz_class {
    if (homogeneous) {
      // Grow the Hilbert function table geometrically.
      if (hilbert.size() < s) {
        hilbert = stairs->count_by_degree(std::min(kMaxS, 2 * s + 8));
      }
      mpz_class total = 0;
      for (std::uint64_t k = 0; k < s; ++k) {
        total += static_cast<unsigned long>(hilbert[k]);
      }
      return total;
    }
    const auto ms = degree_monomials(ring, s);
    return static_cast<unsigned long>(
        count_quotient(ideal_sum(R.defining(), ms)));
  };

  std::vector<mpz_class> diffs;
  for (std::uint64_t s = 1; s <= kMaxS; ++s) {
    check_deadline();
    lengths.push_back(length_at(s));
    if (s < d) continue;
    // Backward d-th difference at s.
    mpz_class diff = 0;
    mpz_class binom = 1;
    for (std::size_t k = 0; k <= d; ++k) {
      const mpz_class term = binom * lengths[s - k];
      diff += (k % 2 == 0) ? term : mpz_class(-term);
      binom = binom * static_cast<unsigned long>(d - k) /
              static_cast<unsigned long>(k + 1);
    }
    diffs.push_back(diff);
    const std::size_t c = diffs.size();
    if (c >= kWindow && diffs[c - 1] == diffs[c - 2] &&
        diffs[c - 2] == diffs[c - 3] && diffs[c - 1] > 0) {
      return diffs.back().get_ui();
    }
  }
  throw LimitError("Hilbert-Samuel differences did not stabilize by s = 60");
}

namespace {

// Splitting numbers of S/(f) for e = 1, 2, ... The ideals
// I_e = m^[p^e] : f^{p^e - 1} have colength a_e and satisfy
// I_e = I_{e-1}^[p] : f^{p-1}, since Frobenius is flat on S. With
// J = I_{e-1}^[p] this gives a_e = l(S/J) - l(S/(J, f^{p-1})), where
// l(S/J) = p^n a_{e-1}. The colon is taken only when a further step is
// requested, and only while S/J is small enough for linear algebra.
class HypersurfaceSplitting {
 public:
  HypersurfaceSplitting(const RingPtr& ring, const Polynomial& f)
      : ring_(ring),
        f_(f),
        p_(ring->field()->characteristic()),
        pn_(checked_power(p_, ring->num_variables())),
        h_(f.pow(p_ - 1)),
        ideal_(Ideal::maximal(ring)) {}

  std::uint64_t next() {
    check_deadline();
    ++e_;
    if (a_ == 0) return 0;
    const std::uint64_t q = prime_power(p_, e_);
    if (pending_) {
      if (pn_ * previous_ <= kMaxLocalColonLength) {
        ideal_ = local_colon(*pending_, h_);
      } else {
        ideal_.reset();
      }
      pending_.reset();
    }
    if (!ideal_) {
      // The previous colon was too large for the linear-algebra route.
      a_ = direct(q);
      return a_;
    }
    std::vector<Polynomial> powers;
    for (const auto& g : ideal_->basis(MonomialOrder::local())->elements()) {
      powers.push_back(g.frobenius(1));
    }
    const Ideal J = ideal_sum(Ideal(ring_, std::move(powers)),
                              maximal_bracket_power(ring_, q));
    const std::uint64_t whole = pn_ * a_;
    const std::vector<Polynomial> extra{h_};
    previous_ = a_;
    a_ = whole - count_quotient(ideal_sum(J, extra));
    pending_ = J;
    return a_;
  }

 private:
  std::uint64_t direct(std::uint64_t q) const {
    const std::size_t n = ring_->num_variables();
    const std::vector<std::uint64_t> bounds(n, q);
    const Polynomial g = pow_truncated(f_, q - 1, bounds);
    if (g.is_zero()) return 0;
    const std::vector<Polynomial> extra{g};
    return checked_power(q, n) -
           count_quotient(ideal_sum(maximal_bracket_power(ring_, q), extra));
  }

  RingPtr ring_;
  Polynomial f_;
  std::uint64_t p_;
  std::uint64_t pn_;
  Polynomial h_;
  std::optional<Ideal> ideal_;  // I_e, while small enough to carry along
  std::optional<Ideal> pending_;  // I_{e-1}^[p] + m^[p^e], colon not taken
  std::uint64_t previous_ = 1;
  std::uint64_t e_ = 0;
  std::uint64_t a_ = 1;
};

std::uint64_t direct_splitting(const QuotientPresentation& R,
                               std::uint64_t e) {
  const RingPtr& ring = R.ring();
  const std::size_t n = ring->num_variables();
  const std::uint64_t q = prime_power(R.characteristic(), e);
  const std::uint64_t box = checked_power(q, n);
  const Ideal& J = R.defining();
  if (J.is_zero()) return box;
  const Ideal m_q = maximal_bracket_power(ring, q);
  if (J.generators().size() == 1) {
    // (f^q) : (f) = (f^{q-1}); only its image modulo m^[q] matters.
    const std::vector<std::uint64_t> bounds(n, q);
    const Polynomial g = pow_truncated(J.generators()[0], q - 1, bounds);
    if (g.is_zero()) return 0;
    const std::vector<Polynomial> extra{g};
    return box - count_quotient(ideal_sum(m_q, extra));
  }
  const Ideal c = colon(frobenius_power(J, e), J);
  return box - count_quotient(ideal_sum(c, m_q));
}

// A non-homogeneous hypersurface goes through the Frobenius recursion; a
// homogeneous one is cheap directly.
bool use_recursion(const QuotientPresentation& R) {
  const auto gens = R.defining().generators();
  return gens.size() == 1 && !gens[0].is_homogeneous();
}

}  // namespace

std::uint64_t splitting_number(const QuotientPresentation& R,
                               std::uint64_t e) {
  if (e < 1) throw InputError("e must be at least 1");
  prime_power(R.characteristic(), e);
  if (!use_recursion(R)) return direct_splitting(R, e);
  HypersurfaceSplitting run(R.ring(), R.defining().generators()[0]);
  std::uint64_t a = 0;
  for (std::uint64_t k = 1; k <= e; ++k) a = run.next();
  return a;
}

SplittingSeries splitting_series(const QuotientPresentation& R,
                                 std::uint64_t e_max) {
  SplittingSeries s{R.characteristic(), R.dim(), {}};
  std::optional<HypersurfaceSplitting> run;
  if (use_recursion(R)) run.emplace(R.ring(), R.defining().generators()[0]);
  for (std::uint64_t e = 1; e <= e_max; ++e) {
    check_deadline();
    const std::uint64_t q = prime_power(s.p, e);
    const std::uint64_t a = run ? run->next() : direct_splitting(R, e);
    mpq_class norm(mpz_class(static_cast<unsigned long>(a)),
                   power_q(q, s.d).get_num());
    norm.canonicalize();
    s.rows.push_back({e, q, a, norm});
  }
  return s;
}

NuSeries nu_series(const Polynomial& f, std::uint64_t e_max) {
  if (f.is_zero()) throw InputError("nu needs a nonzero polynomial");
  if (f.constant_term() != 0) {
    throw InputError("nu needs a polynomial in the maximal ideal");
  }
  const std::size_t n = f.ring()->num_variables();
  const std::uint64_t p = f.field().characteristic();
  NuSeries s{p, {}};
  std::uint64_t previous = 0;
  for (std::uint64_t e = 1; e <= e_max; ++e) {
    check_deadline();
    const std::uint64_t q = prime_power(p, e);
    const std::vector<std::uint64_t> bounds(n, q);
    auto outside = [&](std::uint64_t t) {
      return !pow_truncated(f, t, bounds).is_zero();
    };
    // f^{p nu_{e-1}} is the Frobenius image of a power outside the smaller
    // bracket power, so it stays outside; f^t lies in m^t, inside m^[q]
    // once t > n(q - 1).
    std::uint64_t lo = p * previous;
    const std::uint64_t cap = n * (q - 1) + 1;
    std::uint64_t step = 1;
    std::uint64_t hi = cap;
    while (lo + step < cap) {
      if (!outside(lo + step)) {
        hi = lo + step;
        break;
      }
      lo += step;
      step *= 2;
    }
    // Invariant: f^lo outside, f^hi inside.
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (outside(mid) ? lo : hi) = mid;
    }
    previous = lo;
    const mpz_class qz = static_cast<unsigned long>(q);
    mpq_class lower(mpz_class(static_cast<unsigned long>(lo)), qz);
    mpq_class upper(mpz_class(static_cast<unsigned long>(lo + 1)), qz);
    lower.canonicalize();
    upper.canonicalize();
    s.rows.push_back({e, q, lo, lower, upper});
  }
  return s;
}

std::pair<mpq_class, mpq_class> fpt_estimate(const NuSeries& series) {
  if (series.rows.empty()) throw InputError("empty nu series");
  const auto& r = series.rows.back();
  return {r.lower, r.upper};
}

ConvergenceDiagnostic convergence_diagnostic(const InvariantSeries& series) {
  if (series.rows.size() < 2) {
    throw InputError("diagnostic needs at least two rows");
  }
  ConvergenceDiagnostic out;
  out.constant = 0;
  const mpz_class p = static_cast<unsigned long>(series.p);
  mpz_class pd = 1;
  for (std::size_t i = 0; i < series.d; ++i) pd *= p;
  for (std::size_t k = 0; k + 1 < series.rows.size(); ++k) {
    const auto& a = series.rows[k];
    const auto& b = series.rows[k + 1];
    mpz_class num = mpz_class(static_cast<unsigned long>(b.value)) -
                    pd * static_cast<unsigned long>(a.value);
    num = abs(num);
    // Divide by p^{e(d-1)}, which is p^{-e} when d = 0.
    mpz_class scale = 1;
    for (std::uint64_t i = 0; i < a.e; ++i) scale *= p;
    mpq_class dev;
    if (series.d == 0) {
      dev = mpq_class(num * scale);
    } else {
      mpz_class den = 1;
      for (std::size_t i = 0; i + 1 < series.d; ++i) den *= scale;
      dev = mpq_class(num, den);
    }
    dev.canonicalize();
    if (dev > out.constant) out.constant = dev;
    out.deviations.push_back(dev);
  }
  return out;
}

}  // namespace charplab
