#include "charplab/perturb.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "charplab/discriminant.hpp"
#include "charplab/errors.hpp"
#include "charplab/limits.hpp"

namespace charplab {

namespace {

using u128 = unsigned __int128;

// Number of monomials of degree d in k variables, saturating at 2^64.
u128 monomial_count(std::uint64_t d, std::size_t k) {
  if (k == 0) return d == 0 ? 1 : 0;
  // C(d + k - 1, k - 1), built incrementally; each partial product is an
  // exact binomial coefficient.
  u128 c = 1;
  const u128 cap = static_cast<u128>(1) << 64;
  for (std::size_t i = 1; i < k; ++i) {
    c = c * (d + i) / i;
    if (c >= cap) return cap;
  }
  return c;
}

// The rank-th monomial of degree d in the given variables, ordered by
// decreasing exponent of the first variable, then the second, and so on.
Monomial unrank(std::size_t nvars, const std::vector<std::size_t>& vars,
                std::uint64_t d, std::uint64_t rank) {
  Monomial m(nvars);
  std::uint64_t left = d;
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
    const std::size_t rest = vars.size() - i - 1;
    for (std::uint64_t a = left;; --a) {
      const auto block = static_cast<std::uint64_t>(
          std::min<u128>(monomial_count(left - a, rest), ~std::uint64_t{0}));
      if (rank < block) {
        m.set(vars[i], a);
        left -= a;
        break;
      }
      rank -= block;
    }
  }
  m.set(vars.back(), left);
  return m;
}

std::string joined(std::span<const Polynomial> polys) {
  std::string out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i) out += "; ";
    out += polys[i].to_string();
  }
  return out;
}

mpq_class normalized(std::uint64_t value, std::uint64_t q, std::size_t d) {
  mpz_class den = 1;
  for (std::size_t i = 0; i < d; ++i) den *= static_cast<unsigned long>(q);
  mpq_class r(mpz_class(static_cast<unsigned long>(value)), den);
  r.canonicalize();
  return r;
}

bool consecutive(const std::vector<std::uint64_t>& es) {
  for (std::size_t i = 1; i < es.size(); ++i) {
    if (es[i] != es[i - 1] + 1) return false;
  }
  return es.size() >= 2;
}

InvariantSeries make_series(std::uint64_t p, std::size_t d,
                            const std::vector<std::uint64_t>& es,
                            const std::vector<std::uint64_t>& values) {
  InvariantSeries s{p, d, {}};
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::uint64_t q = prime_power(p, es[i]);
    s.rows.push_back({es[i], q, values[i], normalized(values[i], q, d)});
  }
  return s;
}

Ideal with_targets(const QuotientPresentation& R,
                   std::span<const Polynomial> f) {
  return ideal_sum(R.defining(), f);
}

std::vector<Polynomial> shifted(std::span<const Polynomial> f,
                                std::span<const Polynomial> eps) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f[i] + eps[i]);
  return out;
}

// Per-sample results, assembled in sample order afterwards.
struct SampleResult {
  std::vector<PerturbationRow> rows;
  SampleSummary summary;
  std::size_t stability_checks = 0;
  std::size_t stability_failures = 0;
  bool contradiction = false;
  bool error = false;
};

class Experiment {
 public:
  Experiment(const PerturbationPlan& plan,
             std::vector<std::vector<Polynomial>> eps)
      : plan_(plan),
        R_(plan.presentation),
        eps_(std::move(eps)),
        p_(R_.characteristic()) {}

  void prepare(PerturbationReport& report) {
    const auto mode = plan_.mode;
    if (mode == PerturbMode::dis_congruence) {
      ext_.emplace(plan_.targets.at(0), plan_.extension_variable);
      return;
    }
    for (auto e : plan_.e_range) {
      thresholds_.push_back(stability_threshold(R_, plan_.targets, e));
    }
    report.thresholds = thresholds_;
    base_ = QuotientPresentation(R_.ring(), with_targets(R_, plan_.targets));
    if (mode == PerturbMode::sop_stability) {
      return;
    }
    base_values_ = values_for(*base_);
    if (consecutive(plan_.e_range)) {
      base_estimate_ = ehk_estimate(
          make_series(p_, base_->dim(), plan_.e_range, base_values_));
    }
    if (mode == PerturbMode::hk_continuity ||
        mode == PerturbMode::fsig_continuity) {
      const bool hypersurface =
          R_.defining().is_zero() && plan_.targets.size() == 1;
      if (!hypersurface || !is_squarefree_hypersurface(plan_.targets[0])) {
        report.notes.push_back("hypothesis unchecked");
      }
    }
  }

  SampleResult run(std::uint64_t index) const {
    SampleResult out;
    const auto& eps = eps_[index];
    const std::string text = joined(eps);
    out.summary.sample = index;
    out.summary.epsilon = text;
    try {
      if (plan_.mode == PerturbMode::dis_congruence) {
        run_dis(index, eps, text, out);
      } else {
        run_ideal(index, eps, text, out);
      }
    } catch (const Error& err) {
      out.error = true;
      out.rows.clear();
      for (auto e : plan_.e_range) {
        out.rows.push_back({index, text, e, "", "", mpq_class(0), "error"});
      }
      out.summary.verdict = "error";
      out.summary.note = err.what();
    }
    return out;
  }

 private:
  bool uses_splitting() const {
    switch (plan_.mode) {
      case PerturbMode::fsig_continuity:
      case PerturbMode::splitting_constancy:
      case PerturbMode::splitting_monotonicity:
        return true;
      case PerturbMode::open_question_probe:
        return plan_.probe == "fsig";
      default:
        return false;
    }
  }

  std::vector<std::uint64_t> values_for(const QuotientPresentation& Q) const {
    std::vector<std::uint64_t> out;
    for (auto e : plan_.e_range) {
      check_deadline();
      out.push_back(uses_splitting() ? splitting_number(Q, e)
                                     : hk_length(Q, e));
    }
    return out;
  }

  void run_dis(std::uint64_t index, const std::vector<Polynomial>& eps,
               const std::string& text, SampleResult& out) const {
    const auto report = disc_congruence_check(*ext_, eps.at(0),
                                              plan_.n_target);
    const bool order_ok = !report.congruence_order ||
                          *report.congruence_order >= plan_.neighborhood;
    const bool ok = report.pass && order_ok;
    std::optional<mpq_class> delta;
    if (report.congruence_order) {
      delta = mpq_class(
          mpz_class(static_cast<unsigned long>(*report.congruence_order)));
    }
    for (auto e : plan_.e_range) {
      out.rows.push_back({index, text, e, report.base.to_string(),
                          report.perturbed.to_string(), delta,
                          ok ? "pass" : "fail"});
    }
    out.summary.verdict = ok ? "pass" : "fail";
    if (!order_ok) out.summary.note = "congruence order below N";
  }

  void run_ideal(std::uint64_t index, const std::vector<Polynomial>& eps,
                 const std::string& text, SampleResult& out) const {
    const auto moved = shifted(plan_.targets, eps);
    const Ideal base_ideal = with_targets(R_, plan_.targets);
    const Ideal moved_ideal = with_targets(R_, moved);
    // Certified stability of (J, f, m^[q]) at every e where N suffices.
    for (std::size_t i = 0; i < plan_.e_range.size(); ++i) {
      if (plan_.neighborhood < thresholds_[i]) continue;
      const std::uint64_t q = prime_power(p_, plan_.e_range[i]);
      const Ideal m_q = maximal_bracket_power(R_.ring(), q);
      ++out.stability_checks;
      if (!ideal_equal(ideal_sum(base_ideal, m_q),
                       ideal_sum(moved_ideal, m_q))) {
        ++out.stability_failures;
      }
    }

    if (plan_.mode == PerturbMode::sop_stability) {
      const bool ok = parameter_check(R_, moved);
      const std::size_t d_base = base_->dim();
      const std::size_t d_moved = krull_dim(moved_ideal);
      for (auto e : plan_.e_range) {
        out.rows.push_back(
            {index, text, e, std::to_string(d_base), std::to_string(d_moved),
             mpq_class(static_cast<long>(d_moved) - static_cast<long>(d_base)),
             ok ? "pass" : "fail"});
      }
      out.summary.verdict = ok ? "pass" : "fail";
      return;
    }

    const QuotientPresentation Q(R_.ring(), moved_ideal);
    const auto values = values_for(Q);
    const std::size_t db = base_->dim();
    const std::size_t dm = Q.dim();
    const std::size_t last = plan_.e_range.size() - 1;
    if (base_estimate_) {
      out.summary.base_estimate = base_estimate_;
      out.summary.perturbed_estimate =
          ehk_estimate(make_series(p_, dm, plan_.e_range, values));
    }

    std::vector<std::string> verdicts(plan_.e_range.size(), "recorded");
    const bool normalize = plan_.mode == PerturbMode::hk_continuity ||
                           plan_.mode == PerturbMode::fsig_continuity ||
                           plan_.mode == PerturbMode::open_question_probe;
    std::vector<mpq_class> vb, vm;
    for (std::size_t i = 0; i <= last; ++i) {
      const std::uint64_t q = prime_power(p_, plan_.e_range[i]);
      if (normalize) {
        vb.push_back(normalized(base_values_[i], q, db));
        vm.push_back(normalized(values[i], q, dm));
      } else {
        vb.emplace_back(mpz_class(static_cast<unsigned long>(base_values_[i])));
        vm.emplace_back(mpz_class(static_cast<unsigned long>(values[i])));
      }
    }

    switch (plan_.mode) {
      case PerturbMode::hk_continuity:
      case PerturbMode::fsig_continuity: {
        std::optional<mpq_class> tol = plan_.tolerance;
        if (!tol && out.summary.perturbed_estimate) {
          tol = 4 * std::max(out.summary.base_estimate->spread,
                             out.summary.perturbed_estimate->spread);
        }
        if (tol) {
          const bool ok = abs(vm[last] - vb[last]) <= *tol;
          verdicts[last] = ok ? "pass" : "fail";
          out.summary.tolerance = tol;
          out.summary.verdict = verdicts[last];
        } else {
          out.summary.verdict = "indeterminate";
          out.summary.note = "no tolerance: need two consecutive e values";
        }
        break;
      }
      case PerturbMode::splitting_constancy: {
        const std::size_t n = R_.ring()->num_variables();
        bool any_fail = false, any_checked = false;
        for (std::size_t i = 0; i <= last; ++i) {
          const std::uint64_t q = prime_power(p_, plan_.e_range[i]);
          const std::uint64_t bound = std::max<std::uint64_t>(
              thresholds_[i], n * (q - 1) + 1);
          if (plan_.neighborhood < bound) {
            verdicts[i] = "indeterminate";
            continue;
          }
          any_checked = true;
          const bool ok = values[i] == base_values_[i];
          verdicts[i] = ok ? "pass" : "fail";
          any_fail = any_fail || !ok;
        }
        out.summary.verdict =
            any_fail ? "fail" : (any_checked ? "pass" : "indeterminate");
        break;
      }
      case PerturbMode::splitting_monotonicity: {
        bool any_fail = false;
        for (std::size_t i = 0; i <= last; ++i) {
          const bool ok = values[i] <= base_values_[i];
          verdicts[i] = ok ? "pass" : "fail";
          any_fail = any_fail || !ok;
        }
        out.summary.verdict = any_fail ? "fail" : "pass";
        break;
      }
      case PerturbMode::open_question_probe: {
        // Conjectured: e_HK(f) >= e_HK(f + eps) and s(f) <= s(f + eps).
        const bool hk = plan_.probe != "fsig";
        mpq_class b = vb[last], m = vm[last];
        if (out.summary.perturbed_estimate) {
          b = out.summary.base_estimate->value;
          m = out.summary.perturbed_estimate->value;
        }
        out.contradiction = hk ? b < m : b > m;
        for (auto& v : verdicts) v = "observed";
        out.summary.verdict = "observed";
        if (out.contradiction) {
          out.summary.note =
              "observation contradicting the conjectured inequality";
        }
        break;
      }
      default:
        break;
    }

    for (std::size_t i = 0; i <= last; ++i) {
      out.rows.push_back({index, text, plan_.e_range[i], rational_text(vb[i]),
                          rational_text(vm[i]), mpq_class(vm[i] - vb[i]),
                          verdicts[i]});
    }
  }

  const PerturbationPlan& plan_;
  const QuotientPresentation& R_;
  std::vector<std::vector<Polynomial>> eps_;
  std::uint64_t p_;
  std::vector<std::uint64_t> thresholds_;
  std::optional<QuotientPresentation> base_;
  std::vector<std::uint64_t> base_values_;
  std::optional<Estimate> base_estimate_;
  std::optional<FiniteExtension> ext_;
};

}  // namespace

PerturbMode parse_mode(const std::string& name) {
  static const std::pair<const char*, PerturbMode> table[] = {
      {"hk-continuity", PerturbMode::hk_continuity},
      {"fsig-continuity", PerturbMode::fsig_continuity},
      {"splitting-constancy", PerturbMode::splitting_constancy},
      {"splitting-monotonicity", PerturbMode::splitting_monotonicity},
      {"sop-stability", PerturbMode::sop_stability},
      {"open-question-probe", PerturbMode::open_question_probe},
      {"dis-congruence", PerturbMode::dis_congruence},
  };
  for (const auto& [text, mode] : table) {
    if (name == text) return mode;
  }
  throw InputError("unknown perturbation mode '" + name + "'");
}

std::string mode_name(PerturbMode mode) {
  switch (mode) {
    case PerturbMode::hk_continuity: return "hk-continuity";
    case PerturbMode::fsig_continuity: return "fsig-continuity";
    case PerturbMode::splitting_constancy: return "splitting-constancy";
    case PerturbMode::splitting_monotonicity: return "splitting-monotonicity";
    case PerturbMode::sop_stability: return "sop-stability";
    case PerturbMode::open_question_probe: return "open-question-probe";
    case PerturbMode::dis_congruence: return "dis-congruence";
  }
  return "";
}

void PerturbationPlan::validate() const {
  if (targets.empty()) throw InputError("plan needs at least one target");
  for (const auto& f : targets) {
    if (!f.ring()->same_as(*presentation.ring())) {
      throw InputError("target belongs to a different ring");
    }
  }
  if (neighborhood < 1) throw InputError("neighborhood N must be at least 1");
  if (degree_cap < neighborhood) {
    throw InputError("degree cap must be at least N");
  }
  if (epsilons.empty() && samples < 1) {
    throw InputError("samples must be at least 1");
  }
  if (e_range.empty()) throw InputError("e range must be nonempty");
  for (std::size_t i = 0; i < e_range.size(); ++i) {
    if (e_range[i] < 1 || (i > 0 && e_range[i] <= e_range[i - 1])) {
      throw InputError("e range must be positive and increasing");
    }
  }
  for (const auto& list : epsilons) {
    if (list.size() != targets.size()) {
      throw InputError("each explicit perturbation needs one entry per target");
    }
  }
  if (mode == PerturbMode::dis_congruence) {
    if (targets.size() != 1) {
      throw InputError("dis-congruence needs exactly one relation");
    }
    if (!presentation.ring()->index_of(extension_variable)) {
      throw InputError("dis-congruence needs a declared extension variable");
    }
  }
  if (probe != "hk" && probe != "fsig") {
    throw InputError("probe must be hk or fsig");
  }
}

std::vector<std::vector<Polynomial>> sample_epsilons(
    const PerturbationPlan& plan) {
  plan.validate();
  if (!plan.epsilons.empty()) return plan.epsilons;
  const RingPtr& ring = plan.presentation.ring();
  const std::size_t n = ring->num_variables();
  const auto& field = *ring->field();
  const std::uint64_t q = field.order();

  std::vector<std::size_t> vars;
  std::optional<std::size_t> z;
  if (plan.mode == PerturbMode::dis_congruence) {
    z = ring->index_of(plan.extension_variable);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!z || i != *z) vars.push_back(i);
  }
  if (vars.empty()) {
    throw InputError("no monomials available: the base ring has no variables");
  }
  std::uint64_t z_degree = 0;
  if (z) {
    z_degree = plan.targets[0].degree_in(*z);
    if (z_degree == 0) throw InputError("relation does not involve z");
  }

  std::vector<std::vector<Polynomial>> out;
  for (std::uint64_t s = 0; s < plan.samples; ++s) {
    SplitMix64 rng = SplitMix64::for_sample(plan.seed, s);
    std::vector<Polynomial> eps;
    for (std::size_t t = 0; t < plan.targets.size(); ++t) {
      const std::uint64_t count = 1 + rng.below(5);
      std::vector<Term> terms;
      for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t d =
            plan.neighborhood +
            rng.below(plan.degree_cap - plan.neighborhood + 1);
        const u128 total = monomial_count(d, vars.size());
        if (total > ~std::uint64_t{0}) {
          throw LimitError("too many monomials in degree " + std::to_string(d));
        }
        Monomial m = unrank(n, vars, d, rng.below(static_cast<std::uint64_t>(total)));
        if (z) m.set(*z, rng.below(z_degree));
        const auto c =
            static_cast<GaloisField::Element>(1 + rng.below(q - 1));
        terms.push_back({m, c});
      }
      eps.push_back(Polynomial::from_terms(ring, std::move(terms)));
    }
    out.push_back(std::move(eps));
  }
  return out;
}

std::uint64_t stability_threshold(const QuotientPresentation& R,
                                  std::span<const Polynomial> f,
                                  std::uint64_t e) {
  const std::uint64_t q = prime_power(R.characteristic(), e);
  const Ideal I = ideal_sum(ideal_sum(R.defining(), f),
                            maximal_bracket_power(R.ring(), q));
  return m_power_in(I);
}

unsigned default_threads() {
  if (const char* env = std::getenv("CHARPLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string rational_text(const mpq_class& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool PerturbationReport::passed() const {
  return std::none_of(properties.begin(), properties.end(),
                      [](const PropertyVerdict& v) {
                        return v.verdict == "fail";
                      });
}

PerturbationReport run_experiment(const PerturbationPlan& plan,
                                  unsigned threads) {
  auto eps = sample_epsilons(plan);
  PerturbationReport report;
  report.mode = plan.mode;
  report.seed = plan.seed;
  report.e_range = plan.e_range;

  Experiment exp(plan, eps);
  exp.prepare(report);

  std::vector<SampleResult> results(eps.size());
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(eps.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < results.size();) {
      results[i] = exp.run(i);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::size_t checks = 0, failures = 0, errors = 0, contradictions = 0;
  std::size_t passes = 0, fails = 0;
  for (auto& r : results) {
    checks += r.stability_checks;
    failures += r.stability_failures;
    errors += r.error;
    contradictions += r.contradiction;
    passes += r.summary.verdict == "pass";
    fails += r.summary.verdict == "fail";
    for (auto& row : r.rows) report.rows.push_back(std::move(row));
    report.samples.push_back(std::move(r.summary));
  }

  if (plan.mode != PerturbMode::dis_congruence) {
    report.properties.push_back(
        {"stability", checks == 0 ? "indeterminate" : (failures ? "fail" : "pass"),
         std::to_string(checks - failures) + "/" + std::to_string(checks) +
             " certified ideal equalities"});
  }
  if (plan.mode == PerturbMode::open_question_probe) {
    report.properties.push_back(
        {mode_name(plan.mode), "observed",
         std::to_string(contradictions) +
             " observations contradicting the conjectured inequality"});
    if (contradictions) {
      report.notes.push_back(
          "observation contradicting the conjectured inequality");
    }
  } else {
    std::string verdict = fails ? "fail" : (passes ? "pass" : "indeterminate");
    report.properties.push_back(
        {mode_name(plan.mode), verdict,
         std::to_string(passes) + " pass, " + std::to_string(fails) +
             " fail, " + std::to_string(results.size() - passes - fails) +
             " other"});
  }
  if (errors) {
    report.notes.push_back(std::to_string(errors) + " samples failed");
  }
  return report;
}

}  // namespace charplab
