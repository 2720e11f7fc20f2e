#include "barscan/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace barscan {

double NormalStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t NormalStream::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

double NormalStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i, std::uint64_t j,
                          std::uint64_t trial, std::uint64_t stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  for (std::uint64_t part : {i, j, trial, stream}) h = mix(h ^ part);
  return h;
}

std::vector<double> absolute_noise(std::size_t m, double xi, std::uint64_t seed) {
  if (!(xi >= 0.0)) throw std::domain_error("xi must be >= 0");
  std::vector<double> h(m, 0.0);
  if (xi == 0.0) return h;
  NormalStream rng(seed);
  for (auto& v : h) v = xi * rng.next();
  return h;
}

std::vector<double> relative_noise(std::span<const double> clean, double nu, std::uint64_t seed) {
  if (!(nu >= 0.0)) throw std::domain_error("nu must be >= 0");
  std::vector<double> h(clean.size(), 0.0);
  if (nu == 0.0) return h;
  double clean_norm2 = 0.0;
  for (double v : clean) clean_norm2 += v * v;
  if (clean_norm2 == 0.0) throw std::domain_error("relative noise needs a nonzero clean signal");

  NormalStream rng(seed);
  double n_norm2 = 0.0;
  for (auto& v : h) {
    v = rng.next();
    n_norm2 += v * v;
  }
  const double scale = nu * std::sqrt(clean_norm2) / std::sqrt(n_norm2);
  for (auto& v : h) v *= scale;
  return h;
}

std::vector<double> make_noise(std::span<const double> clean, const NoiseSpec& spec) {
  struct Visitor {
    std::span<const double> clean;
    std::uint64_t seed;
    std::vector<double> operator()(NoNoise) const { return std::vector<double>(clean.size(), 0.0); }
    std::vector<double> operator()(RelativeNoise n) const { return relative_noise(clean, n.nu, seed); }
    std::vector<double> operator()(AbsoluteNoise n) const {
      return absolute_noise(clean.size(), n.xi, seed);
    }
  };
  return std::visit(Visitor{clean, spec.seed}, spec.model);
}

void add_noise(ScanSignal& signal, const NoiseSpec& spec) {
  const auto h = make_noise(signal.samples, spec);
  for (std::size_t i = 0; i < h.size(); ++i) signal.samples[i] += h[i];
  if (std::holds_alternative<NoNoise>(spec.model)) return;
  signal.provenance.seed = spec.seed;
  if (const auto* rel = std::get_if<RelativeNoise>(&spec.model)) signal.provenance.nu = rel->nu;
  if (const auto* abs = std::get_if<AbsoluteNoise>(&spec.model)) signal.provenance.xi = abs->xi;
}

DigitString random_digits(NormalStream& rng) {
  std::array<std::uint8_t, kDigitCount> digits{};
  for (auto& d : digits) d = static_cast<std::uint8_t>(rng.below(10));
  return DigitString(digits);
}

}  // namespace barscan
