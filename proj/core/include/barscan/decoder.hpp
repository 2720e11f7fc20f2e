#pragma once

// Greedy left-to-right block decoder and the least-squares amplitude estimate
// taken from the known middle guard.

#include <array>
#include <cstddef>
#include <optional>

#include "barscan/forward_model.hpp"
#include "barscan/symbology.hpp"

namespace barscan {

struct DecodeOptions {
  /// When set, each candidate's l1 distance is evaluated only on I_j padded
  /// by this many samples on both sides. Unset means the full length-m vector.
  std::optional<std::size_t> window_samples;

  /// Digit positions (0..11) in the order they are decoded. Unset means
  /// left to right. Must be a permutation when given.
  std::optional<std::array<std::size_t, kDigitCount>> order;
};

/// Padding of ceil(3 * sigma_hat * r) samples, enough to hold the bulk of a
/// blurred column inside the window.
std::size_t default_window(double sigma_hat, int r);

struct DecodeResult {
  DigitString digits;
  SparseCode x;
  /// ||delta||_1 after each of the twelve selections, in decode order.
  std::array<double, kDigitCount> residual_l1{};
  double alpha_hat = 1.0;
  double sigma_hat = 0.0;
};

/// Greedy block decoder. The known S, M and E columns are removed from the residual
/// up front; each digit block then takes the column minimising
/// ||delta - p_k||_1 (smallest k on ties) and subtracts it.
/// Throws std::domain_error when the signal and map disagree on the grid.
DecodeResult greedy_decode(const ScanSignal& signal, const ForwardMap& map,
                           const DecodeOptions& options = {});

/// alpha_hat = <p_mid, d_mid> / ||p_mid||^2 with p_mid = P^(8) restricted to I_8,
/// computed from a unit-amplitude map.
double estimate_alpha(const ScanSignal& signal, const ForwardMap& unit_map);
double estimate_alpha(const ScanSignal& signal, double sigma_hat, const SampleGrid& grid);

/// Estimates alpha from sigma_hat, then decodes against alpha_hat * G(sigma_hat) * D.
/// `unit_map` must have alpha == 1 and sigma == sigma_hat.
DecodeResult decode_with_estimation(const ScanSignal& signal, const ForwardMap& unit_map,
                                    const DecodeOptions& options = {});
DecodeResult decode_with_estimation(const ScanSignal& signal, double sigma_hat,
                                    const DecodeOptions& options = {});

}  // namespace barscan
