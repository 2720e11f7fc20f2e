#pragma once

// Monte-Carlo phase diagrams: success probability of the greedy decoder over
// a (sigma_hat, noise level) grid, plus CSV and PGM writers.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace barscan {

enum class NoiseAxis { relative, absolute };

struct PhaseDiagramSpec {
  double sigma = 0.45;
  double alpha = 1.0;
  int r = 10;
  std::vector<double> sigma_hats;
  NoiseAxis axis = NoiseAxis::relative;
  std::vector<double> levels;  ///< nu values (relative) or xi values (absolute)
  int trials = 100;
  std::uint64_t seed = 0;
  bool estimate_alpha = false;

  /// Throws std::invalid_argument on empty/unsorted grids or trials < 1.
  void validate() const;
};

struct PhaseCell {
  int successes = 0;
  int trials = 0;
  /// digits decoded correctly, summed over trials (auxiliary)
  long correct_digits = 0;

  double probability() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
  double digit_accuracy() const {
    return trials ? static_cast<double>(correct_digits) / (12.0 * trials) : 0.0;
  }
};

struct PhaseDiagramResult {
  PhaseDiagramSpec spec;
  /// sigma_hat-major: cell(i, j) = cells[i * levels.size() + j]
  std::vector<PhaseCell> cells;
  double wall_seconds = 0.0;

  const PhaseCell& cell(std::size_t sigma_hat_index, std::size_t level_index) const {
    return cells[sigma_hat_index * spec.levels.size() + level_index];
  }
};

/// Worker count from BARSCAN_THREADS; 0, unset or unparsable means all cores.
unsigned worker_count_from_env();

/// Runs every cell; `workers == 0` defers to worker_count_from_env().
/// Results do not depend on the worker count.
PhaseDiagramResult run_phase_diagram(const PhaseDiagramSpec& spec, unsigned workers = 0);

void write_csv(std::ostream& out, const PhaseDiagramResult& result);
void write_csv(const std::filesystem::path& path, const PhaseDiagramResult& result);

/// Binary PGM, one pixel per cell, sigma_hat across and noise level down;
/// pixel = round(255 (1 - p)), so certain success is black.
void write_pgm(std::ostream& out, const PhaseDiagramResult& result);
void write_pgm(const std::filesystem::path& path, const PhaseDiagramResult& result);

std::uint8_t probability_to_gray(double probability);

/// Parses "start:stop:step" (inclusive of stop up to rounding) or a single value.
std::vector<double> parse_range(std::string_view text);

}  // namespace barscan
