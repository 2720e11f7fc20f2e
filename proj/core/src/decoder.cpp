#include "barscan/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace barscan {

namespace {

void check_grid(const ScanSignal& signal, const ForwardMap& map) {
  if (signal.oversampling != map.grid().oversampling() || signal.size() != map.rows()) {
    throw std::domain_error("signal (r=" + std::to_string(signal.oversampling) +
                            ", m=" + std::to_string(signal.size()) +
                            ") does not match forward map grid (r=" +
                            std::to_string(map.grid().oversampling()) +
                            ", m=" + std::to_string(map.rows()) + ")");
  }
}

double l1_distance(std::span<const double> a, std::span<const double> b, double scale,
                   std::size_t begin, std::size_t end) {
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) sum += std::abs(a[i] - scale * b[i]);
  return sum;
}

double l1_norm(std::span<const double> a) {
  double sum = 0.0;
  for (double v : a) sum += std::abs(v);
  return sum;
}

void subtract(std::vector<double>& delta, std::span<const double> column, double scale) {
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] -= scale * column[i];
}

std::array<std::size_t, kDigitCount> resolve_order(const DecodeOptions& options) {
  std::array<std::size_t, kDigitCount> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!options.order) return order;
  order = *options.order;
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < kDigitCount; ++i) {
    if (sorted[i] != i) throw std::invalid_argument("decode order must be a permutation of 0..11");
  }
  return order;
}

// Decodes against scale * map without materialising the scaled map.
DecodeResult decode_scaled(const ScanSignal& signal, const ForwardMap& map, double scale,
                           const DecodeOptions& options) {
  check_grid(signal, map);
  const std::size_t m = map.rows();
  const auto order = resolve_order(options);

  std::vector<double> delta = signal.samples;
  subtract(delta, map.column(0, 0), scale);
  subtract(delta, map.column(7, 0), scale);
  subtract(delta, map.column(14, 0), scale);

  std::array<std::uint8_t, kDigitCount> digits{};
  std::array<double, kDigitCount> residuals{};

  for (std::size_t step = 0; step < kDigitCount; ++step) {
    const std::size_t position = order[step];
    const std::size_t block = kDigitBlocks[position];

    std::size_t begin = 0;
    std::size_t end = m;
    if (options.window_samples) {
      const RowRange rows = map.rows_of(block);
      const std::size_t pad = *options.window_samples;
      begin = rows.begin > pad ? rows.begin - pad : 0;
      end = std::min(m, rows.end + pad);
    }

    std::size_t best = 0;
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 10; ++k) {
      const double norm = l1_distance(delta, map.column(block, k), scale, begin, end);
      if (norm < best_norm) {
        best_norm = norm;
        best = k;
      }
    }
    digits[position] = static_cast<std::uint8_t>(best);
    subtract(delta, map.column(block, best), scale);
    residuals[step] = l1_norm(delta);
  }

  const DigitString decoded(digits);
  return DecodeResult{decoded, digits_to_x(decoded), residuals, scale * map.params().alpha,
                      map.params().sigma};
}

}  // namespace

std::size_t default_window(double sigma_hat, int r) {
  return static_cast<std::size_t>(std::ceil(3.0 * sigma_hat * r));
}

DecodeResult greedy_decode(const ScanSignal& signal, const ForwardMap& map,
                           const DecodeOptions& options) {
  return decode_scaled(signal, map, 1.0, options);
}

double estimate_alpha(const ScanSignal& signal, const ForwardMap& unit_map) {
  check_grid(signal, unit_map);
  const RowRange mid = unit_map.rows_of(7);
  const auto p = unit_map.column(7, 0);
  double dot = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = mid.begin; i < mid.end; ++i) {
    dot += p[i] * signal.samples[i];
    norm2 += p[i] * p[i];
  }
  if (!(norm2 > 0.0)) throw std::logic_error("middle guard column vanishes on I_8");
  return dot / norm2 * unit_map.params().alpha;
}

double estimate_alpha(const ScanSignal& signal, double sigma_hat, const SampleGrid& grid) {
  return estimate_alpha(signal, forward_map({sigma_hat, 1.0}, grid));
}

DecodeResult decode_with_estimation(const ScanSignal& signal, const ForwardMap& unit_map,
                                    const DecodeOptions& options) {
  if (unit_map.params().alpha != 1.0) {
    throw std::invalid_argument("decode_with_estimation expects a unit-amplitude forward map");
  }
  const double alpha_hat = estimate_alpha(signal, unit_map);
  if (!(alpha_hat > 0.0) || !std::isfinite(alpha_hat)) {
    // A nonpositive estimate cannot scale a valid forward map.
    throw std::domain_error("estimated amplitude is not positive: " + std::to_string(alpha_hat));
  }
  return decode_scaled(signal, unit_map, alpha_hat, options);
}

DecodeResult decode_with_estimation(const ScanSignal& signal, double sigma_hat,
                                    const DecodeOptions& options) {
  if (signal.oversampling <= 0) throw std::domain_error("signal has no sampling grid");
  return decode_with_estimation(signal, forward_map({sigma_hat, 1.0}, make_grid(signal.oversampling)),
                                options);
}

}  // namespace barscan
