#pragma once

// Reproducible noise. Every draw comes from std::mt19937_64 (whose output
// sequence is fixed by the standard) followed by a hand-written Box-Muller
// transform, so a seed yields the same vector on every conforming platform.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "barscan/forward_model.hpp"
#include "barscan/symbology.hpp"

namespace barscan {

/// Recorded alongside seeds in signal files.
inline constexpr std::string_view kNoiseProcedure = "mt19937_64+box-muller";

/// Standard normal draws. Box-Muller produces pairs; the second is cached.
class NormalStream {
public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n) without modulo bias.
  std::uint64_t below(std::uint64_t n);

private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// splitmix64-style mix of a master seed with grid coordinates and a stream tag.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i, std::uint64_t j,
                          std::uint64_t trial, std::uint64_t stream = 0);

struct NoNoise {};
struct RelativeNoise {
  double nu = 0.0;
};
struct AbsoluteNoise {
  double xi = 0.0;
};

struct NoiseSpec {
  std::variant<NoNoise, RelativeNoise, AbsoluteNoise> model;
  std::uint64_t seed = 0;
};

/// m iid N(0, xi^2) draws.
std::vector<double> absolute_noise(std::size_t m, double xi, std::uint64_t seed);

/// iid N(0,1) draws rescaled so ||h||_2 = nu ||clean||_2. Uses the same
/// stream as absolute_noise, so the result is a multiple of that draw.
std::vector<double> relative_noise(std::span<const double> clean, double nu, std::uint64_t seed);

std::vector<double> make_noise(std::span<const double> clean, const NoiseSpec& spec);

/// Adds noise in place and records the noise settings in the signal's provenance.
void add_noise(ScanSignal& signal, const NoiseSpec& spec);

DigitString random_digits(NormalStream& rng);

}  // namespace barscan
