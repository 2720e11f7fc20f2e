#pragma once

// Reference computations used only by the tests. Nothing here calls into the
// library's numerical kernels.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "barscan/symbology.hpp"

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

/// Weight that sample time t puts on the unit bar [bar, bar + 1] under a
/// Gaussian beam of width sigma, by direct integration of the density.
inline double blur_weight(double t, std::size_t bar, double sigma) {
  const double lo = static_cast<double>(bar);
  const double hi = lo + 1.0;
  // The density is negligible beyond 12 sigma; clipping keeps the quadrature well resolved.
  const double a = std::max(lo, t - 12.0 * sigma);
  const double b = std::min(hi, t + 12.0 * sigma);
  if (a >= b) return 0.0;
  const double c = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  return integrate([&](double s) { return c * std::exp(-0.5 * (t - s) * (t - s) / (sigma * sigma)); },
                   a, b);
}

inline double sample_time(std::size_t i, int r) { return (static_cast<double>(i) + 0.5) / r; }

/// Independent UPC-A bar string built from the textbook tables.
inline std::string upc_bars(const std::array<int, 12>& d) {
  static const char* kL[10] = {"0001101", "0011001", "0010011", "0111101", "0100011",
                               "0110001", "0101111", "0111011", "0110111", "0001011"};
  std::string s = "101";
  for (int i = 0; i < 6; ++i) s += kL[d[i]];
  s += "01010";
  for (int i = 6; i < 12; ++i) {
    for (char c : std::string(kL[d[i]])) s += (c == '0' ? '1' : '0');
  }
  s += "101";
  return s;
}

inline std::array<int, 12> random_digit_array(std::mt19937& gen) {
  std::uniform_int_distribution<int> dist(0, 9);
  std::array<int, 12> d{};
  for (auto& v : d) v = dist(gen);
  return d;
}

inline barscan::DigitString to_digit_string(const std::array<int, 12>& d) {
  std::array<std::uint8_t, 12> u{};
  for (int i = 0; i < 12; ++i) u[i] = static_cast<std::uint8_t>(d[i]);
  return barscan::DigitString(u);
}

}  // namespace oracle
