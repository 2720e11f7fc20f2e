// barscan: encode, simulate, decode and analyze UPC-A scans.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "barscan/analysis.hpp"
#include "barscan/decoder.hpp"
#include "barscan/experiment.hpp"
#include "barscan/forward_model.hpp"
#include "barscan/noise.hpp"
#include "barscan/signal_io.hpp"
#include "barscan/symbology.hpp"

namespace {

using namespace barscan;

std::string fmt(double v, int precision = 10) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

int run_encode(const std::string& digits) {
  std::cout << encode_digits(DigitString::parse(digits)).to_string() << '\n';
  return 0;
}

struct SimulateArgs {
  std::string digits;
  bool random_digits = false;
  double sigma = 0.45;
  double alpha = 1.0;
  int r = 10;
  std::optional<double> nu;
  std::optional<double> xi;
  std::uint64_t seed = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  DigitString digits;
  if (args.random_digits) {
    NormalStream rng(derive_seed(args.seed, 0, 0, 0, 2));
    digits = random_digits(rng);
  } else {
    if (args.digits.empty()) throw CLI::ValidationError("simulate", "--digits or --random-digits is required");
    digits = DigitString::parse(args.digits);
  }
  const GaussianParams params{args.sigma, args.alpha};
  ScanSignal signal = synthesize_clean(digits, params, make_grid(args.r));
  NoiseSpec noise{NoNoise{}, args.seed};
  if (args.nu) noise.model = RelativeNoise{*args.nu};
  if (args.xi) noise.model = AbsoluteNoise{*args.xi};
  add_noise(signal, noise);
  signal.provenance.seed = args.seed;
  write_signal(args.out, signal);
  return 0;
}

struct DecodeArgs {
  std::string signal;
  double sigma_hat = 0.45;
  std::optional<double> alpha_hat;
  bool estimate = false;
  std::optional<int> window;
};

int run_decode(const DecodeArgs& args) {
  const ScanSignal signal = read_signal(args.signal);
  const SampleGrid grid = make_grid(signal.oversampling);
  const ForwardMap unit = forward_map({args.sigma_hat, 1.0}, grid);

  DecodeOptions options;
  if (args.window) {
    if (*args.window < 0) throw CLI::ValidationError("--window", "must be >= 0");
    options.window_samples = *args.window == 0
                                 ? default_window(args.sigma_hat, signal.oversampling)
                                 : static_cast<std::size_t>(*args.window) * signal.oversampling;
  }

  const DecodeResult result = args.alpha_hat
                                  ? greedy_decode(signal, unit.with_alpha(*args.alpha_hat), options)
                                  : decode_with_estimation(signal, unit, options);

  std::cout << "digits " << result.digits.to_string() << '\n';
  std::cout << "alpha_hat " << fmt(result.alpha_hat, 17) << '\n';
  std::cout << "sigma_hat " << fmt(result.sigma_hat, 17) << '\n';
  std::cout << "residual_l1";
  for (double v : result.residual_l1) std::cout << ' ' << fmt(v, 17);
  std::cout << '\n';
  return 0;
}

struct AnalyzeArgs {
  int r = 10;
  double alpha = 1.0;
  std::string sigma_grid;
  std::string sigma_hat_grid;
};

int run_analyze(const AnalyzeArgs& args) {
  const SampleGrid grid = make_grid(args.r);
  const auto sigmas = parse_range(args.sigma_grid);
  const bool with_hat = !args.sigma_hat_grid.empty();
  const auto hats = with_hat ? parse_range(args.sigma_hat_grid) : std::vector<double>{};

  std::cout << "sigma,epsilon,mu,noise_ceiling";
  if (with_hat) std::cout << ",sigma_hat,B,gterm_bound";
  std::cout << '\n';
  for (double sigma : sigmas) {
    const ForwardMap map = forward_map({sigma, args.alpha}, grid);
    const BlockDiagnostics d = block_diagnostics(map);
    const std::string head = fmt(sigma) + ',' + fmt(d.epsilon, 17) + ',' + fmt(d.mu, 17) + ',' +
                             fmt(noise_ceiling(sigma, args.alpha, args.r), 17);
    if (!with_hat) {
      std::cout << head << '\n';
      continue;
    }
    for (double sh : hats) {
      std::cout << head << ',' << fmt(sh) << ',';
      if (sigma > 0.0 && sh > 0.0) {
        const SigmaSensitivity s = sigma_bound(sigma, sh);
        std::cout << fmt(s.bound, 17) << ',' << fmt(gterm_bound(s, args.r), 17);
      } else {
        std::cout << "nan,nan";
      }
      std::cout << '\n';
    }
  }
  return 0;
}

struct PhaseArgs {
  double sigma = 0.45;
  double alpha = 1.0;
  int r = 10;
  std::string sigma_hat;
  std::string nu;
  std::string xi;
  int trials = 100;
  std::uint64_t seed = 0;
  bool estimate = false;
  std::string csv;
  std::string pgm;
};

int run_phase(const PhaseArgs& args) {
  PhaseDiagramSpec spec;
  spec.sigma = args.sigma;
  spec.alpha = args.alpha;
  spec.r = args.r;
  spec.sigma_hats = parse_range(args.sigma_hat);
  if (!args.nu.empty()) {
    spec.axis = NoiseAxis::relative;
    spec.levels = parse_range(args.nu);
  } else {
    spec.axis = NoiseAxis::absolute;
    spec.levels = parse_range(args.xi);
  }
  spec.trials = args.trials;
  spec.seed = args.seed;
  spec.estimate_alpha = args.estimate;

  const PhaseDiagramResult result = run_phase_diagram(spec);
  write_csv(args.csv, result);
  if (!args.pgm.empty()) write_pgm(args.pgm, result);
  std::cerr << "phase-diagram: " << result.cells.size() << " cells x " << spec.trials
            << " trials in " << fmt(result.wall_seconds, 4) << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbol-based UPC-A bar code decoding from blurred, noisy scans"};
  app.require_subcommand(1);

  std::string encode_digits_arg;
  auto* encode = app.add_subcommand("encode", "Print the 95-bar 0/1 string for 12 digits");
  encode->add_option("digits", encode_digits_arg, "12 decimal digits")->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Synthesize a blurred, noisy scan");
  simulate->add_option("--digits", sim.digits, "12 decimal digits");
  simulate->add_flag("--random-digits", sim.random_digits, "Draw the digits from --seed");
  simulate->add_option("--sigma", sim.sigma, "Blur standard deviation")->required()->check(CLI::NonNegativeNumber);
  simulate->add_option("--alpha", sim.alpha, "Amplitude")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--r", sim.r, "Oversampling ratio")->required()->check(CLI::PositiveNumber);
  auto* nu_opt = simulate->add_option("--nu", sim.nu, "Relative noise level")->check(CLI::NonNegativeNumber);
  auto* xi_opt = simulate->add_option("--xi", sim.xi, "Absolute noise standard deviation")->check(CLI::NonNegativeNumber);
  nu_opt->excludes(xi_opt);
  simulate->add_option("--seed", sim.seed, "RNG seed")->required();
  simulate->add_option("--out", sim.out, "Output signal file")->required();

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Decode a signal file");
  decode->add_option("--signal", dec.signal, "Signal file")->required()->check(CLI::ExistingFile);
  decode->add_option("--sigma-hat", dec.sigma_hat, "Assumed blur")->required()->check(CLI::NonNegativeNumber);
  auto* ah = decode->add_option("--alpha-hat", dec.alpha_hat, "Assumed amplitude")->check(CLI::PositiveNumber);
  auto* est = decode->add_flag("--estimate-alpha", dec.estimate, "Least-squares amplitude from the middle guard");
  ah->excludes(est);
  decode->add_option("--window", dec.window,
                     "Restrict each l1 evaluation to the block padded by this many bars (0 = ceil(3 sigma_hat r) samples)");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Forward-map diagnostics as CSV");
  analyze->add_option("--r", an.r, "Oversampling ratio")->required()->check(CLI::PositiveNumber);
  analyze->add_option("--alpha", an.alpha, "Amplitude")->required()->check(CLI::PositiveNumber);
  analyze->add_option("--sigma-grid", an.sigma_grid, "start:stop:step")->required();
  analyze->add_option("--sigma-hat-grid", an.sigma_hat_grid, "start:stop:step");

  PhaseArgs ph;
  auto* phase = app.add_subcommand("phase-diagram", "Monte-Carlo recovery probabilities");
  phase->add_option("--sigma", ph.sigma, "True blur")->required()->check(CLI::NonNegativeNumber);
  phase->add_option("--alpha", ph.alpha, "True amplitude")->required()->check(CLI::PositiveNumber);
  phase->add_option("--r", ph.r, "Oversampling ratio")->required()->check(CLI::PositiveNumber);
  phase->add_option("--sigma-hat", ph.sigma_hat, "start:stop:step")->required();
  auto* pnu = phase->add_option("--nu", ph.nu, "Relative noise grid start:stop:step");
  auto* pxi = phase->add_option("--xi", ph.xi, "Absolute noise grid start:stop:step");
  pnu->excludes(pxi);
  phase->add_option("--trials", ph.trials, "Trials per cell")->required()->check(CLI::PositiveNumber);
  phase->add_option("--seed", ph.seed, "Master seed")->required();
  phase->add_flag("--estimate-alpha", ph.estimate, "Estimate alpha per trial");
  phase->add_option("--csv", ph.csv, "CSV output path")->required();
  phase->add_option("--pgm", ph.pgm, "PGM output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode) return run_encode(encode_digits_arg);
    if (*simulate) return run_simulate(sim);
    if (*decode) return run_decode(dec);
    if (*analyze) return run_analyze(an);
    if (*phase) {
      if (ph.nu.empty() == ph.xi.empty()) {
        throw CLI::ValidationError("phase-diagram", "exactly one of --nu or --xi is required");
      }
      return run_phase(ph);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "barscan: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
