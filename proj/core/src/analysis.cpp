#include "barscan/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "barscan/normal.hpp"

namespace barscan {

namespace {

double l1_on(std::span<const double> v, RowRange rows) {
  double sum = 0.0;
  for (std::size_t i = rows.begin; i < rows.end; ++i) sum += std::abs(v[i]);
  return sum;
}

double l1_diff_on(std::span<const double> a, std::span<const double> b, std::size_t begin,
                  std::size_t end) {
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

constexpr int kMaxJ1 = 10000;

}  // namespace

EpsilonParts epsilon_parts(const ForwardMap& map) {
  EpsilonParts parts;
  const std::size_t m = map.rows();

  for (std::size_t b = 0; b < kBlockCount; ++b) {
    const RowRange rows = map.rows_of(b);
    double worst = 0.0;
    for (std::size_t k = 0; k < kBlocks[b].column_count; ++k) {
      const auto col = map.column(b, k);
      const double outside = l1_on(col, {0, rows.begin}) + l1_on(col, {rows.end, m});
      worst = std::max(worst, outside);
    }
    parts.out_of_block_by_block[b] = worst;
    parts.out_of_block = std::max(parts.out_of_block, worst);
  }

  // worst-case mass the later blocks can place inside I_b
  for (std::size_t b = 0; b + 1 < kBlockCount; ++b) {
    const RowRange rows = map.rows_of(b);
    double total = 0.0;
    for (std::size_t later = b + 1; later < kBlockCount; ++later) {
      double worst = 0.0;
      for (std::size_t k = 0; k < kBlocks[later].column_count; ++k) {
        worst = std::max(worst, l1_on(map.column(later, k), rows));
      }
      total += worst;
    }
    parts.later_by_block[b] = total;
    parts.later_blocks = std::max(parts.later_blocks, total);
  }
  return parts;
}

double compute_epsilon(const ForwardMap& map) { return epsilon_parts(map).epsilon(); }

MuResult compute_mu(const ForwardMap& map) {
  MuResult mu{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const std::size_t m = map.rows();
  for (std::size_t block : kDigitBlocks) {
    const RowRange rows = map.rows_of(block);
    for (std::size_t k1 = 0; k1 < 10; ++k1) {
      for (std::size_t k2 = k1 + 1; k2 < 10; ++k2) {
        const auto a = map.column(block, k1);
        const auto b = map.column(block, k2);
        mu.full = std::min(mu.full, l1_diff_on(a, b, 0, m));
        mu.restricted = std::min(mu.restricted, l1_diff_on(a, b, rows.begin, rows.end));
      }
    }
  }
  return mu;
}

BlockDiagnostics block_diagnostics(const ForwardMap& map) {
  BlockDiagnostics d;
  d.leakage = epsilon_parts(map);
  d.epsilon = d.leakage.epsilon();
  const MuResult mu = compute_mu(map);
  d.mu = mu.full;
  d.mu_restricted = mu.restricted;
  return d;
}

RecoveryCheck check_recovery_condition(const ForwardMap& map, std::span<const double> noise,
                                       double epsilon) {
  if (noise.size() != map.rows()) {
    throw std::invalid_argument("noise length " + std::to_string(noise.size()) +
                                " does not match forward map rows " + std::to_string(map.rows()));
  }
  RecoveryCheck check;
  check.epsilon = epsilon;
  check.holds = true;
  for (std::size_t pos = 0; pos < kDigitCount; ++pos) {
    const std::size_t block = kDigitBlocks[pos];
    const RowRange rows = map.rows_of(block);
    double separation = std::numeric_limits<double>::infinity();
    for (std::size_t k1 = 0; k1 < 10; ++k1) {
      for (std::size_t k2 = k1 + 1; k2 < 10; ++k2) {
        separation = std::min(separation, l1_diff_on(map.column(block, k1), map.column(block, k2),
                                                     rows.begin, rows.end));
      }
    }
    const double rhs = 2.0 * (l1_on(noise, rows) + 2.0 * epsilon);
    check.margins[pos] = separation - rhs;
    if (!(separation > rhs)) check.holds = false;
  }
  return check;
}

RecoveryCheck check_recovery_condition(const ForwardMap& map, std::span<const double> noise) {
  return check_recovery_condition(map, noise, compute_epsilon(map));
}

double noise_ceiling(double sigma, double alpha, int r) {
  if (sigma < 0.0) throw std::domain_error("sigma must be >= 0");
  return alpha * r * (std::exp(-sigma) - 1.2 * sigma);
}

double delta2(double sigma_max, int j) {
  const double a = std::exp(-1.0 / (2.0 * sigma_max * sigma_max));
  return sigma_max * std::pow(a, j) / (j * std::sqrt(2.0 * std::numbers::pi));
}

SigmaSensitivity sigma_bound(double sigma, double sigma_hat) {
  if (!(sigma > 0.0) || !(sigma_hat > 0.0)) {
    throw std::domain_error("sigma_bound requires sigma > 0 and sigma_hat > 0");
  }
  SigmaSensitivity s;
  s.sigma = sigma;
  s.sigma_hat = sigma_hat;
  s.sigma_max = std::max(sigma, sigma_hat);
  s.a = std::exp(-1.0 / (2.0 * s.sigma_max * s.sigma_max));
  if (sigma == sigma_hat) {
    s.delta1 = 0.0;
    s.j1 = 1;
    s.bound = 0.0;
    return s;
  }

  // (ln sigma - ln sigma_hat) / (sigma^2 - sigma_hat^2) has a removable
  // singularity at sigma == sigma_hat with limit 1 / (2 sigma^2).
  double ratio;
  if (std::abs(sigma - sigma_hat) < 1e-6) {
    const double mean = 0.5 * (sigma + sigma_hat);
    ratio = 1.0 / (2.0 * mean * mean);
  } else {
    ratio = std::log(sigma / sigma_hat) / (sigma * sigma - sigma_hat * sigma_hat);
  }
  const double root = std::sqrt(2.0 * ratio);
  s.delta1 = std::abs(std_normal_cdf(sigma_hat * root) - std_normal_cdf(sigma * root));

  int j = 1;
  while (delta2(s.sigma_max, j) > s.delta1) {
    if (++j > kMaxJ1) {
      throw std::runtime_error("sigma_bound: no j1 <= 10000 with Delta2 <= Delta1 (sigma=" +
                               std::to_string(sigma) + ", sigma_hat=" + std::to_string(sigma_hat) + ")");
    }
  }
  s.j1 = j;
  s.bound = 2.0 * j * s.delta1 +
            4.0 * s.sigma_max * std::pow(s.a, j) / ((1.0 - s.a) * j * std::sqrt(2.0 * std::numbers::pi));
  return s;
}

double gterm_bound(const SigmaSensitivity& sens, int r) { return 7.0 * r * sens.bound; }

std::array<double, kBlockCount> sigma_mismatch_l1(double sigma, double sigma_hat,
                                                  const SampleGrid& grid, const SparseCode& x) {
  const BinaryBarcode bars = dictionary().apply(x);
  const auto true_signal = make_blur(sigma, grid).apply(bars);
  const auto model_signal = make_blur(sigma_hat, grid).apply(bars);
  std::array<double, kBlockCount> out{};
  for (std::size_t b = 0; b < kBlockCount; ++b) {
    const RowRange rows = block_rows(grid, b);
    out[b] = l1_diff_on(true_signal, model_signal, rows.begin, rows.end);
  }
  return out;
}

}  // namespace barscan
