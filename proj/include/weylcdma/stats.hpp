#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace weylcdma {

inline constexpr double kZ95 = 1.959963984540054;

/// Gaussian tail probability Q(x) = P(X > x), X ~ N(0, 1).
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                                 double z = kZ95) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double lo = centre - half;
  double hi = centre + half;
  if (successes == 0) lo = 0.0;
  if (successes == trials) hi = 1.0;
  return {lo < 0.0 ? 0.0 : lo, hi > 1.0 ? 1.0 : hi};
}

}  // namespace weylcdma
