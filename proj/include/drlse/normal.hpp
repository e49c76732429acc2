#pragma once

#include <cmath>
#include <numbers>

namespace drlse {

/// Standard normal CDF.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * std::numbers::sqrt2 * 0.5);
}

/// P(lo < Z <= hi) for standard normal Z. Uses the upper tail when the
/// interval sits above zero so that far-tail masses do not cancel to 0.
inline double normal_interval_mass(double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  if (lo >= 0.0) return normal_cdf(-lo) - normal_cdf(-hi);
  return normal_cdf(hi) - normal_cdf(lo);
}

}  // namespace drlse
