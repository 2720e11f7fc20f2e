#pragma once

namespace barscan {

/// Standard normal CDF, evaluated through erfc so both tails keep full
/// relative precision. Absolute error is below 1e-15 on the whole line.
double std_normal_cdf(double x);

/// Phi(hi) - Phi(lo) for lo <= hi, computed from whichever tail avoids
/// cancellation.
double std_normal_mass(double lo, double hi);

}  // namespace barscan
