#include "barscan/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "barscan/decoder.hpp"
#include "barscan/forward_model.hpp"
#include "barscan/noise.hpp"

namespace barscan {

namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kDigitStream = 0;
constexpr std::uint64_t kNoiseStream = 1;

bool sorted_nonempty(const std::vector<double>& v) {
  return !v.empty() && std::is_sorted(v.begin(), v.end());
}

class Runner {
public:
  explicit Runner(const PhaseDiagramSpec& spec)
      : spec_(spec), grid_(make_grid(spec.r)), truth_(forward_map({spec.sigma, spec.alpha}, grid_)) {
    models_.reserve(spec.sigma_hats.size());
    const double model_alpha = spec.estimate_alpha ? 1.0 : spec.alpha;
    for (double sh : spec.sigma_hats) models_.push_back(forward_map({sh, model_alpha}, grid_));
  }

  int trial(std::size_t i, std::size_t j, int t) const {
    const auto ti = static_cast<std::uint64_t>(t);
    NormalStream digit_rng(derive_seed(spec_.seed, i, j, ti, kDigitStream));
    const DigitString truth = random_digits(digit_rng);

    ScanSignal signal = synthesize_clean(truth, truth_);
    NoiseSpec noise{NoNoise{}, derive_seed(spec_.seed, i, j, ti, kNoiseStream)};
    if (spec_.axis == NoiseAxis::relative) {
      noise.model = RelativeNoise{spec_.levels[j]};
    } else {
      noise.model = AbsoluteNoise{spec_.levels[j]};
    }
    add_noise(signal, noise);

    DigitString decoded;
    if (spec_.estimate_alpha) {
      // A nonpositive amplitude estimate leaves nothing to decode against;
      // such a trial counts as a failure with no correct digits.
      const double alpha_hat = estimate_alpha(signal, models_[i]);
      if (!(alpha_hat > 0.0) || !std::isfinite(alpha_hat)) return 0;
      decoded = decode_with_estimation(signal, models_[i]).digits;
    } else {
      decoded = greedy_decode(signal, models_[i]).digits;
    }
    int correct = 0;
    for (std::size_t d = 0; d < kDigitCount; ++d) correct += decoded[d] == truth[d];
    return correct;
  }

private:
  const PhaseDiagramSpec& spec_;
  SampleGrid grid_;
  ForwardMap truth_;
  std::vector<ForwardMap> models_;
};

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

template <typename Writer>
void write_file(const std::filesystem::path& path, bool binary, Writer&& writer) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void PhaseDiagramSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  if (!sorted_nonempty(sigma_hats)) throw std::invalid_argument("sigma_hat grid must be nonempty and sorted");
  if (!sorted_nonempty(levels)) throw std::invalid_argument("noise grid must be nonempty and sorted");
  if (sigma_hats.front() < 0.0) throw std::invalid_argument("sigma_hat values must be >= 0");
  if (levels.front() < 0.0) throw std::invalid_argument("noise levels must be >= 0");
  GaussianParams{sigma, alpha}.validate();
}

unsigned worker_count_from_env() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("BARSCAN_THREADS");
  if (!env || !*env) return hw;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return hw;
  return static_cast<unsigned>(std::min<unsigned long>(v, 1024));
}

PhaseDiagramResult run_phase_diagram(const PhaseDiagramSpec& spec, unsigned workers) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  PhaseDiagramResult result;
  result.spec = spec;
  const std::size_t rows = spec.sigma_hats.size();
  const std::size_t cols = spec.levels.size();
  result.cells.assign(rows * cols, PhaseCell{});

  const Runner runner(result.spec);
  if (workers == 0) workers = worker_count_from_env();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, rows * cols));

  // Each cell is written by exactly one worker; seeds depend only on the
  // cell coordinates, so scheduling cannot change the output.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next++; c < rows * cols; c = next++) {
      const std::size_t i = c / cols;
      const std::size_t j = c % cols;
      PhaseCell cell;
      cell.trials = spec.trials;
      for (int t = 0; t < spec.trials; ++t) {
        const int correct = runner.trial(i, j, t);
        cell.correct_digits += correct;
        if (correct == static_cast<int>(kDigitCount)) ++cell.successes;
      }
      result.cells[c] = cell;
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_csv(std::ostream& out, const PhaseDiagramResult& result) {
  out << "sigma_hat,axis2,successes,trials,probability,digit_accuracy\n";
  const auto& spec = result.spec;
  for (std::size_t i = 0; i < spec.sigma_hats.size(); ++i) {
    for (std::size_t j = 0; j < spec.levels.size(); ++j) {
      const PhaseCell& c = result.cell(i, j);
      out << format_value(spec.sigma_hats[i]) << ',' << format_value(spec.levels[j]) << ','
          << c.successes << ',' << c.trials << ',' << format_fixed6(c.probability()) << ','
          << format_fixed6(c.digit_accuracy()) << '\n';
    }
  }
}

void write_csv(const std::filesystem::path& path, const PhaseDiagramResult& result) {
  write_file(path, false, [&](std::ostream& out) { write_csv(out, result); });
}

std::uint8_t probability_to_gray(double probability) {
  const double p = std::clamp(probability, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(255.0 * (1.0 - p) + 0.5));
}

void write_pgm(std::ostream& out, const PhaseDiagramResult& result) {
  const std::size_t width = result.spec.sigma_hats.size();
  const std::size_t height = result.spec.levels.size();
  out << "P5\n" << width << ' ' << height << "\n255\n";
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      out.put(static_cast<char>(probability_to_gray(result.cell(x, y).probability())));
    }
  }
}

void write_pgm(const std::filesystem::path& path, const PhaseDiagramResult& result) {
  write_file(path, true, [&](std::ostream& out) { write_pgm(out, result); });
}

std::vector<double> parse_range(std::string_view text) {
  auto number = [&](std::string_view part) {
    const std::string s(part);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw std::invalid_argument("bad number '" + s + "' in range '" + std::string(text) + "'");
    }
    return v;
  };

  const auto first = text.find(':');
  if (first == std::string_view::npos) return {number(text)};
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw std::invalid_argument("range must be start:stop:step, got '" + std::string(text) + "'");
  }
  const double start = number(text.substr(0, first));
  const double stop = number(text.substr(first + 1, second - first - 1));
  const double step = number(text.substr(second + 1));
  if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
  if (stop < start) throw std::invalid_argument("range stop must be >= start");

  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = start + static_cast<double>(k) * step;
  return values;
}

}  // namespace barscan
