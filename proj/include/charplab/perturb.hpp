#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charplab/invariants.hpp"

namespace charplab {

/// SplitMix64 with the standard golden-ratio increment.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, bound) from one draw, by the high half of a 128-bit
  /// product.
  std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Stream for one sample: the seed mixed with the sample index.
  static SplitMix64 for_sample(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  }

 private:
  std::uint64_t state_;
};

enum class PerturbMode {
  hk_continuity,
  fsig_continuity,
  splitting_constancy,
  splitting_monotonicity,
  sop_stability,
  open_question_probe,
  dis_congruence,
};

PerturbMode parse_mode(const std::string& name);
std::string mode_name(PerturbMode mode);

struct PerturbationPlan {
  explicit PerturbationPlan(QuotientPresentation R)
      : presentation(std::move(R)) {}

  QuotientPresentation presentation;
  std::vector<Polynomial> targets;
  std::uint64_t neighborhood = 1;  // N: every term of eps has order >= N
  std::uint64_t degree_cap = 1;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> e_range{1};
  PerturbMode mode = PerturbMode::hk_continuity;
  /// Continuity tolerance; defaults to 4 times the larger estimator spread.
  std::optional<mpq_class> tolerance;
  /// Explicit perturbations, one list (one entry per target) per sample;
  /// replaces random sampling when nonempty.
  std::vector<std::vector<Polynomial>> epsilons;
  /// dis-congruence: the variable adjoined to the base ring.
  std::string extension_variable;
  std::uint64_t n_target = 1;
  /// open-question-probe: "hk" or "fsig".
  std::string probe = "hk";

  /// Throws InputError on an inconsistent plan.
  void validate() const;
};

/// samples x targets perturbations drawn as documented in the README: per
/// sample a fresh stream; per target one draw for the term count (1-5),
/// then per term a degree draw, a monomial-rank draw and a coefficient
/// draw.
std::vector<std::vector<Polynomial>> sample_epsilons(
    const PerturbationPlan& plan);

/// m_power_in(J + (f) + m^[p^e]).
std::uint64_t stability_threshold(const QuotientPresentation& R,
                                  std::span<const Polynomial> f,
                                  std::uint64_t e);

struct PerturbationRow {
  std::uint64_t sample;
  std::string epsilon;
  std::uint64_t e;
  std::string base;
  std::string perturbed;
  /// perturbed - base; nullopt encodes an infinite congruence order.
  std::optional<mpq_class> delta;
  std::string verdict;
};

struct SampleSummary {
  std::uint64_t sample;
  std::string epsilon;
  std::optional<Estimate> base_estimate;
  std::optional<Estimate> perturbed_estimate;
  std::optional<mpq_class> tolerance;
  std::string verdict;
  std::string note;
};

struct PropertyVerdict {
  std::string property;
  std::string verdict;  // pass, fail, indeterminate or observed
  std::string detail;
};

struct PerturbationReport {
  PerturbMode mode;
  std::uint64_t seed;
  std::string prng = "SplitMix64";
  std::vector<std::uint64_t> e_range;
  std::vector<std::uint64_t> thresholds;  // per e, when computed
  std::vector<PerturbationRow> rows;
  std::vector<SampleSummary> samples;
  std::vector<PropertyVerdict> properties;
  std::vector<std::string> notes;

  /// True unless some asserted property failed.
  bool passed() const;
};

/// Runs the plan; samples may execute on up to `threads` workers (0 means
/// CHARPLAB_THREADS or the hardware concurrency). The report does not
/// depend on the thread count.
PerturbationReport run_experiment(const PerturbationPlan& plan,
                                  unsigned threads = 0);

/// Worker count from CHARPLAB_THREADS, else the hardware concurrency.
unsigned default_threads();

/// "a" for integers, "a/b" otherwise.
std::string rational_text(const mpq_class& r);

}  // namespace charplab
