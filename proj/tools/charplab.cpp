#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "charplab/errors.hpp"
#include "job.hpp"

namespace fs = std::filesystem;
using namespace charplab::cli;

namespace {

struct Flags {
  std::string job;
  std::string out;
  std::string format = "csv";
  std::optional<std::string> order;
  std::optional<std::uint64_t> emax, neighborhood, samples, seed;
  std::optional<std::uint64_t> limit_basis, limit_degree;
};

std::string one_line(std::string s) {
  for (auto& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << "charplab: " << kind << " error: " << one_line(message) << "\n";
  return code;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw charplab::InputError("cannot write " + path);
  out << text;
}

std::string render(const Outcome& o, const std::string& format) {
  return format == "json" ? json_text(o.document) : csv_text(o.table);
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--job", f.job, "Job file (JSON)")->required();
  cmd->add_option("--out", f.out, "Output file (default stdout)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--order", f.order, "grevlex, lex, local or block:<k>");
  cmd->add_option("--emax", f.emax, "Largest Frobenius exponent");
  cmd->add_option("--neighborhood", f.neighborhood,
                  "Perturbation order N");
  cmd->add_option("--samples", f.samples, "Number of perturbations");
  cmd->add_option("--seed", f.seed, "Sampling seed");
  cmd->add_option("--limit-basis", f.limit_basis, "Largest Groebner basis");
  cmd->add_option("--limit-degree", f.limit_degree, "Largest exponent");
}

int run_single(const std::string& task, const Flags& f) {
  Overrides o;
  o.task = task;
  o.order = f.order;
  o.e_max = f.emax;
  o.neighborhood = f.neighborhood;
  o.samples = f.samples;
  o.seed = f.seed;
  o.limit_basis = f.limit_basis;
  o.limit_degree = f.limit_degree;
  const Outcome outcome = run_job(load_job(f.job), o);
  if (!outcome.error_kind.empty() && outcome.expectation_failures.empty() &&
      outcome.exit_code != kExitOk) {
    return fail(outcome.error_kind, outcome.error_message, outcome.exit_code);
  }
  write_text(f.out, render(outcome, f.format));
  if (!outcome.expectation_failures.empty()) {
    std::string all;
    for (const auto& s : outcome.expectation_failures) {
      all += (all.empty() ? "" : "; ") + s;
    }
    return fail("expectation", all, kExitExpectation);
  }
  return kExitOk;
}

int run_suite_command(const std::string& dir, const std::string& out,
                      const std::string& format) {
  const SuiteOutcome suite = run_suite(dir);
  if (!out.empty()) {
    fs::create_directories(out);
    for (const auto& [name, outcome] : suite.jobs) {
      write_text((fs::path(out) / (name + "." + format)).string(),
                 render(outcome, format));
    }
    write_text((fs::path(out) / "summary.csv").string(),
               csv_text(suite.summary));
  }
  std::cout << csv_text(suite.summary);
  if (!suite.passed) {
    for (const auto& [name, outcome] : suite.jobs) {
      for (const auto& failure : outcome.expectation_failures) {
        std::cerr << "charplab: " << name << ": " << one_line(failure) << "\n";
      }
      if (outcome.expectation_failures.empty() && outcome.exit_code != 0) {
        std::cerr << "charplab: " << name << ": " << outcome.error_kind
                  << " error: " << one_line(outcome.error_message) << "\n";
      }
    }
    return kExitExpectation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic-p invariants of quotients of polynomial rings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Flags flags;
  std::string chosen;
  const std::pair<const char*, const char*> tasks[] = {
      {"gb", "Reduced Groebner basis"},
      {"length", "Colength of an m-primary ideal"},
      {"dim", "Krull dimension"},
      {"hk", "Hilbert-Kunz lengths and estimate"},
      {"fsig", "Splitting numbers and F-signature estimate"},
      {"fpt", "nu invariants and F-pure threshold interval"},
      {"mult", "Hilbert-Samuel multiplicity"},
      {"disc", "Trace-form discriminant"},
      {"present", "Presentation of a monomial subalgebra"},
      {"perturb", "Perturbation experiment"},
  };
  for (const auto& [name, help] : tasks) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, flags);
    cmd->callback([&chosen, name = std::string(name)] { chosen = name; });
  }

  std::string suite_dir = "paper-suite";
  std::string suite_out;
  std::string suite_format = "csv";
  auto* suite = app.add_subcommand("run-suite", "Run every job of a directory");
  suite->add_option("dir", suite_dir, "Directory of job files");
  suite->add_option("--out", suite_out, "Directory for per-job artifacts");
  suite->add_option("--format", suite_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  suite->callback([&chosen] { chosen = "run-suite"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("input", e.what(), kExitInput);
  }

  try {
    if (chosen == "run-suite") {
      return run_suite_command(suite_dir, suite_out, suite_format);
    }
    return run_single(chosen, flags);
  } catch (const charplab::LimitError& e) {
    return fail("limit", e.what(), kExitLimit);
  } catch (const charplab::InputError& e) {
    return fail("input", e.what(), kExitInput);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitInternal);
  }
}
