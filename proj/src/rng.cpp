#include "specstream/rng.hpp"

#include <cmath>
#include <numbers>

namespace specstream {

double standard_normal(std::uint64_t seed, RngStream stream, std::uint64_t counter) noexcept {
  const double u1 = uniform01(seed, stream, 2 * counter);
  const double u2 = uniform01(seed, stream, 2 * counter + 1);
  // 1 - u1 lies in (0, 1], so the log is finite.
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace specstream
