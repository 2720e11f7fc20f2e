#include "barscan/forward_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "barscan/normal.hpp"

namespace barscan {

void GaussianParams::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("sigma must be finite and >= 0, got " + std::to_string(sigma));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("alpha must be finite and > 0, got " + std::to_string(alpha));
  }
}

SampleGrid make_grid(int r) {
  if (r <= 0) throw std::domain_error("oversampling ratio must be positive, got " + std::to_string(r));
  SampleGrid grid;
  grid.r_ = r;
  const std::size_t m = kBarCount * static_cast<std::size_t>(r);
  grid.times_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    grid.times_[i] = (static_cast<double>(i) + 0.5) / r;
  }
  return grid;
}

RowRange block_rows(const SampleGrid& grid, std::size_t block) {
  const auto r = static_cast<std::size_t>(grid.oversampling());
  const BlockSpan& span = kBlocks.at(block);
  return {span.first_bar * r, (span.first_bar + span.bar_count) * r};
}

BlurMatrix::BlurMatrix(double sigma, SampleGrid grid)
    : sigma_(sigma), grid_(std::move(grid)), entries_(grid_.size() * kBarCount, 0.0) {}

std::vector<double> BlurMatrix::apply(const BinaryBarcode& bars) const {
  std::vector<double> out(rows(), 0.0);
  for (std::size_t k = 0; k < rows(); ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < kBarCount; ++j) {
      if (bars[j]) sum += (*this)(k, j);
    }
    out[k] = sum;
  }
  return out;
}

BlurMatrix blur_matrix(double sigma, const SampleGrid& grid) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("blur_matrix requires sigma > 0, got " + std::to_string(sigma));
  }
  BlurMatrix g(sigma, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.time(k);
    for (std::size_t j = 0; j < kBarCount; ++j) {
      // bar j (0-based) spans [j, j+1]
      const double lo = (t - static_cast<double>(j) - 1.0) / sigma;
      const double hi = (t - static_cast<double>(j)) / sigma;
      g.entries_[k * kBarCount + j] = std_normal_mass(lo, hi);
    }
  }
  return g;
}

BlurMatrix indicator_matrix(const SampleGrid& grid) {
  BlurMatrix g(0.0, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    // t in (j-1, j] for 1-based j  <=>  0-based bar ceil(t) - 1
    const auto bar = static_cast<std::size_t>(std::ceil(grid.time(k))) - 1;
    if (bar < kBarCount) g.entries_[k * kBarCount + bar] = 1.0;
  }
  return g;
}

BlurMatrix make_blur(double sigma, const SampleGrid& grid) {
  return sigma == 0.0 ? indicator_matrix(grid) : blur_matrix(sigma, grid);
}

ForwardMap::ForwardMap(GaussianParams params, SampleGrid grid)
    : params_(params), grid_(std::move(grid)), rows_(grid_.size()), columns_(rows_ * kCodeLength, 0.0) {}

std::vector<double> ForwardMap::apply(const SparseCode& x) const {
  std::vector<double> out(rows_, 0.0);
  for (std::size_t c = 0; c < kCodeLength; ++c) {
    if (!x[c]) continue;
    const auto col = column(c);
    for (std::size_t i = 0; i < rows_; ++i) out[i] += col[i];
  }
  return out;
}

ForwardMap ForwardMap::with_alpha(double alpha) const {
  GaussianParams params = params_;
  params.alpha = alpha;
  params.validate();
  ForwardMap scaled(params, grid_);
  const double factor = alpha / params_.alpha;
  for (std::size_t i = 0; i < columns_.size(); ++i) scaled.columns_[i] = columns_[i] * factor;
  return scaled;
}

ForwardMap forward_map(const GaussianParams& params, const SampleGrid& grid, const Dictionary& dict) {
  params.validate();
  const BlurMatrix g = make_blur(params.sigma, grid);
  ForwardMap map(params, grid);
  const std::size_t m = grid.size();
  // D is block diagonal with at most 7 nonzeros per column, so each column of
  // G*D is a short sum of columns of G.
  for (std::size_t c = 0; c < kCodeLength; ++c) {
    const BlockSpan& span = kBlocks[block_of_column(c)];
    double* out = map.columns_.data() + c * m;
    for (std::size_t b = 0; b < span.bar_count; ++b) {
      const std::size_t bar = span.first_bar + b;
      if (!dict(bar, c)) continue;
      for (std::size_t i = 0; i < m; ++i) out[i] += g(i, bar);
    }
    for (std::size_t i = 0; i < m; ++i) out[i] *= params.alpha;
  }
  return map;
}

ForwardMap forward_map(const GaussianParams& params, const SampleGrid& grid) {
  return forward_map(params, grid, dictionary());
}

ScanSignal synthesize_clean(const DigitString& digits, const ForwardMap& map) {
  ScanSignal signal;
  signal.oversampling = map.grid().oversampling();
  signal.samples = map.apply(digits_to_x(digits));
  signal.provenance.digits = digits;
  signal.provenance.sigma = map.params().sigma;
  signal.provenance.alpha = map.params().alpha;
  return signal;
}

ScanSignal synthesize_clean(const DigitString& digits, const GaussianParams& params,
                            const SampleGrid& grid) {
  return synthesize_clean(digits, forward_map(params, grid));
}

}  // namespace barscan
