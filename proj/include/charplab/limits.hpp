#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace charplab {

/// Process-wide resource limits. Set once before a computation starts and
/// read concurrently afterwards.
struct Limits {
  std::size_t max_basis = 5000;
  std::uint64_t max_degree = std::uint64_t{1} << 20;
  /// Wall-clock budget measured from the last set_limits() call; checked
  /// cooperatively between Buchberger pairs and between e levels.
  std::optional<double> max_seconds;
};

inline constexpr std::uint64_t kDegreeCeiling = (std::uint64_t{1} << 31) - 1;

const Limits& limits() noexcept;
/// Clamps max_degree to kDegreeCeiling and restarts the clock.
void set_limits(const Limits& l);
/// Throws LimitError once the wall-clock budget is spent.
void check_deadline();

/// Restores the previous limits on scope exit.
class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& l) : saved_(limits()) { set_limits(l); }
  ~ScopedLimits() { set_limits(saved_); }
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

}  // namespace charplab
