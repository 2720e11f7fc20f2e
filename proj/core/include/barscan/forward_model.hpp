#pragma once

// Scanner forward model: sample grid, Gaussian blur matrix G(sigma), and the
// forward map P = alpha * G(sigma) * D with its 15-block partition.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "barscan/symbology.hpp"

namespace barscan {

struct GaussianParams {
  double sigma = 0.0;  ///< standard deviation in unit bar widths; 0 means no blur
  double alpha = 1.0;  ///< amplitude multiplier

  /// Throws std::domain_error on sigma < 0 or a non-positive / non-finite alpha.
  void validate() const;
};

/// Equally spaced sample times t_i = (i - 1/2) / r, i = 1..95r.
class SampleGrid {
public:
  int oversampling() const noexcept { return r_; }
  std::size_t size() const noexcept { return times_.size(); }
  double time(std::size_t i) const { return times_[i]; }
  std::span<const double> times() const noexcept { return times_; }

  friend bool operator==(const SampleGrid& a, const SampleGrid& b) { return a.r_ == b.r_; }

private:
  friend SampleGrid make_grid(int r);
  int r_ = 0;
  std::vector<double> times_;
};

SampleGrid make_grid(int r);

/// Half-open row range [begin, end) of the index set I_j for block `block` (0-based).
struct RowRange {
  std::size_t begin;
  std::size_t end;
  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
};

RowRange block_rows(const SampleGrid& grid, std::size_t block);

/// Dense row-major m x 95 matrix of per-bar kernel masses.
class BlurMatrix {
public:
  double operator()(std::size_t row, std::size_t bar) const { return entries_[row * kBarCount + bar]; }
  std::size_t rows() const noexcept { return entries_.size() / kBarCount; }
  double sigma() const noexcept { return sigma_; }
  const SampleGrid& grid() const noexcept { return grid_; }
  std::span<const double> row(std::size_t k) const {
    return std::span<const double>(entries_).subspan(k * kBarCount, kBarCount);
  }

  /// G * c for a bar vector c.
  std::vector<double> apply(const BinaryBarcode& bars) const;

private:
  friend BlurMatrix blur_matrix(double sigma, const SampleGrid& grid);
  friend BlurMatrix indicator_matrix(const SampleGrid& grid);
  BlurMatrix(double sigma, SampleGrid grid);

  double sigma_;
  SampleGrid grid_;
  std::vector<double> entries_;
};

/// G_kj = Phi((t_k - j + 1)/sigma) - Phi((t_k - j)/sigma). Requires sigma > 0.
BlurMatrix blur_matrix(double sigma, const SampleGrid& grid);

/// Zero-blur limit: G_kj = 1 iff t_k in (j - 1, j].
BlurMatrix indicator_matrix(const SampleGrid& grid);

/// blur_matrix for sigma > 0, indicator_matrix for sigma == 0.
BlurMatrix make_blur(double sigma, const SampleGrid& grid);

/// P = alpha * G(sigma) * D. Columns are stored contiguously since every
/// consumer walks whole columns p_k^(j).
class ForwardMap {
public:
  std::size_t rows() const noexcept { return rows_; }
  const GaussianParams& params() const noexcept { return params_; }
  const SampleGrid& grid() const noexcept { return grid_; }

  std::span<const double> column(std::size_t c) const {
    return std::span<const double>(columns_).subspan(c * rows_, rows_);
  }
  /// p_k^(j) for 0-based block j and 0-based candidate k.
  std::span<const double> column(std::size_t block, std::size_t k) const {
    return column(kBlocks[block].first_column + k);
  }
  double operator()(std::size_t row, std::size_t col) const { return columns_[col * rows_ + row]; }

  RowRange rows_of(std::size_t block) const { return block_rows(grid_, block); }

  /// P x for a 0/1 code.
  std::vector<double> apply(const SparseCode& x) const;

  /// Copy with every column rescaled so that the amplitude becomes `alpha`.
  ForwardMap with_alpha(double alpha) const;

private:
  friend ForwardMap forward_map(const GaussianParams&, const SampleGrid&, const Dictionary&);
  ForwardMap(GaussianParams params, SampleGrid grid);

  GaussianParams params_;
  SampleGrid grid_;
  std::size_t rows_;
  std::vector<double> columns_;
};

ForwardMap forward_map(const GaussianParams& params, const SampleGrid& grid, const Dictionary& dict);
ForwardMap forward_map(const GaussianParams& params, const SampleGrid& grid);

struct Provenance {
  std::optional<DigitString> digits;
  std::optional<double> sigma;
  std::optional<double> alpha;
  std::optional<double> nu;
  std::optional<double> xi;
  std::optional<std::uint64_t> seed;
};

/// Sampled scan d in R^m. Owns its samples.
struct ScanSignal {
  int oversampling = 0;
  std::vector<double> samples;
  Provenance provenance;

  std::size_t size() const noexcept { return samples.size(); }
};

/// d = P * digits_to_x(digits), noise free.
ScanSignal synthesize_clean(const DigitString& digits, const GaussianParams& params,
                            const SampleGrid& grid);
ScanSignal synthesize_clean(const DigitString& digits, const ForwardMap& map);

}  // namespace barscan
