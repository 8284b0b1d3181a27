#include "charplab/limits.hpp"

#include <algorithm>

#include "charplab/errors.hpp"

namespace charplab {

namespace {

Limits g_limits;
std::chrono::steady_clock::time_point g_start =
    std::chrono::steady_clock::now();

}  // namespace

const Limits& limits() noexcept { return g_limits; }

void set_limits(const Limits& l) {
  g_limits = l;
  g_limits.max_degree = std::min(g_limits.max_degree, kDegreeCeiling);
  g_start = std::chrono::steady_clock::now();
}

void check_deadline() {
  if (!g_limits.max_seconds) return;
  const std::chrono::duration<double> spent =
      std::chrono::steady_clock::now() - g_start;
  if (spent.count() > *g_limits.max_seconds) {
    throw LimitError("time limit of " + std::to_string(*g_limits.max_seconds) +
                     " s exceeded");
  }
}

}  // namespace charplab
