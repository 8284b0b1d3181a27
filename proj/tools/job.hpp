#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace charplab::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitLimit = 2;
inline constexpr int kExitInternal = 3;
inline constexpr int kExitExpectation = 4;

/// Command-line values that replace the matching job fields.
struct Overrides {
  std::optional<std::string> task;
  std::optional<std::string> order;
  std::optional<std::uint64_t> e_max;
  std::optional<std::uint64_t> neighborhood;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> limit_basis;
  std::optional<std::uint64_t> limit_degree;
};

struct Outcome {
  json document;
  Table table;
  int exit_code = kExitOk;
  /// "input", "limit" or "internal" when the job failed.
  std::string error_kind;
  std::string error_message;
  std::vector<std::string> expectation_failures;
};

/// Reads and parses a JSON job file; InputError on failure.
json load_job(const std::filesystem::path& path);

/// Applies the overrides, validates the job and runs it. Errors are
/// recorded in the outcome rather than thrown.
Outcome run_job(json job, const Overrides& overrides = {});

struct SuiteOutcome {
  Table summary;  // job,task,status,expectations
  std::vector<std::pair<std::string, Outcome>> jobs;
  bool passed = true;
};

/// Runs every *.json file of `dir` in name order.
SuiteOutcome run_suite(const std::filesystem::path& dir);

}  // namespace charplab::cli
