#include "barscan/normal.hpp"

#include <cmath>
#include <numbers>

namespace barscan {

double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double std_normal_mass(double lo, double hi) {
  if (lo >= 0.0) {
    // upper tail: Q(lo) - Q(hi)
    return 0.5 * (std::erfc(lo / std::numbers::sqrt2) - std::erfc(hi / std::numbers::sqrt2));
  }
  if (hi <= 0.0) {
    return std_normal_cdf(hi) - std_normal_cdf(lo);
  }
  return 1.0 - std_normal_cdf(lo) - 0.5 * std::erfc(hi / std::numbers::sqrt2);
}

}  // namespace barscan
