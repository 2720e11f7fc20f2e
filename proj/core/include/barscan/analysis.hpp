#pragma once

// Diagnostics of the forward map: block-diagonality (epsilon), column
// separation (mu), the exact recovery-condition check, the empirical noise
// ceiling, and the sigma-mismatch bound B(sigma, sigma_hat).

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "barscan/forward_model.hpp"

namespace barscan {

struct EpsilonParts {
  /// max_{j,k} ||p_k^(j) restricted to [m] \ I_j||_1
  double out_of_block = 0.0;
  /// max_{j<15} sum_{j'>j} max_k ||p_k^(j') restricted to I_j||_1
  double later_blocks = 0.0;
  /// per-block worst out-of-block mass, 15 entries
  std::array<double, kBlockCount> out_of_block_by_block{};
  /// per-block worst mass received from later blocks, 15 entries (last is 0)
  std::array<double, kBlockCount> later_by_block{};

  double epsilon() const noexcept { return out_of_block > later_blocks ? out_of_block : later_blocks; }
};

EpsilonParts epsilon_parts(const ForwardMap& map);

/// Smallest epsilon satisfying both block-concentration conditions.
/// The max over the k-choices of later blocks collapses to a sum of per-block
/// maxima because every entry of the map is nonnegative.
double compute_epsilon(const ForwardMap& map);

struct MuResult {
  double full = 0.0;        ///< min over digit blocks, k1 != k2 of ||p_k1 - p_k2||_1
  double restricted = 0.0;  ///< same with both columns restricted to I_j
};

MuResult compute_mu(const ForwardMap& map);

struct BlockDiagnostics {
  double epsilon = 0.0;
  double mu = 0.0;
  double mu_restricted = 0.0;
  EpsilonParts leakage;
};

BlockDiagnostics block_diagnostics(const ForwardMap& map);

struct RecoveryCheck {
  bool holds = false;
  double epsilon = 0.0;
  /// For each digit position (0..11): min_{k1!=k2} ||(p_k1 - p_k2)|I_j||_1
  /// minus 2 (||h|I_j||_1 + 2 epsilon). The condition holds iff all are > 0.
  std::array<double, kDigitCount> margins{};
};

/// Exact sufficient condition for greedy recovery under noise `h`.
RecoveryCheck check_recovery_condition(const ForwardMap& map, std::span<const double> noise);
/// Same, with a precomputed epsilon (avoids recomputing it per noise draw).
RecoveryCheck check_recovery_condition(const ForwardMap& map, std::span<const double> noise,
                                       double epsilon);

/// alpha r (e^-sigma - 6 sigma / 5); negative means the empirical sufficient
/// condition cannot be met at any noise level.
double noise_ceiling(double sigma, double alpha, int r);

struct SigmaSensitivity {
  double sigma = 0.0;
  double sigma_hat = 0.0;
  double sigma_max = 0.0;
  double a = 0.0;       ///< exp(-1 / (2 sigma_max^2))
  double delta1 = 0.0;  ///< peak of |Phi(x/sigma) - Phi(x/sigma_hat)|
  int j1 = 1;           ///< first j with Delta2(sigma_max, j) <= delta1
  double bound = 0.0;   ///< B(sigma, sigma_hat)
};

/// Tail term sigma_max a^j / (j sqrt(2 pi)).
double delta2(double sigma_max, int j);

/// Per-sample bound on |[(G(sigma) - G(sigma_hat)) D x]_i|.
/// Throws std::domain_error for nonpositive arguments.
SigmaSensitivity sigma_bound(double sigma, double sigma_hat);

/// 7 r B, the bound on the mismatch term over a 7-bar digit block.
double gterm_bound(const SigmaSensitivity& sens, int r);

/// Measured ||((G(sigma) - G(sigma_hat)) D x) restricted to I_j||_1 for every
/// block. sigma or sigma_hat may be 0 (indicator kernel).
std::array<double, kBlockCount> sigma_mismatch_l1(double sigma, double sigma_hat,
                                                  const SampleGrid& grid, const SparseCode& x);

}  // namespace barscan
