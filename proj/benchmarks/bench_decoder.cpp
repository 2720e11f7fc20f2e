#include <benchmark/benchmark.h>

#include "barscan/analysis.hpp"
#include "barscan/decoder.hpp"
#include "barscan/experiment.hpp"
#include "barscan/forward_model.hpp"
#include "barscan/noise.hpp"

using namespace barscan;

static void BM_ForwardMap(benchmark::State& state) {
  const SampleGrid grid = make_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(forward_map({0.45, 1.0}, grid));
}
BENCHMARK(BM_ForwardMap)->Arg(5)->Arg(10)->Arg(20);

static void BM_GreedyDecode(benchmark::State& state) {
  const ForwardMap P = forward_map({0.45, 1.0}, make_grid(static_cast<int>(state.range(0))));
  ScanSignal s = synthesize_clean(DigitString::parse("036000291452"), P);
  add_noise(s, {AbsoluteNoise{0.1}, 1});
  for (auto _ : state) benchmark::DoNotOptimize(greedy_decode(s, P));
}
BENCHMARK(BM_GreedyDecode)->Arg(5)->Arg(10)->Arg(20);

static void BM_DecodeWithEstimation(benchmark::State& state) {
  const ForwardMap unit = forward_map({0.5, 1.0}, make_grid(10));
  ScanSignal s = synthesize_clean(DigitString::parse("036000291452"), {0.45, 0.25}, make_grid(10));
  add_noise(s, {AbsoluteNoise{0.1}, 1});
  for (auto _ : state) benchmark::DoNotOptimize(decode_with_estimation(s, unit));
}
BENCHMARK(BM_DecodeWithEstimation);

static void BM_Diagnostics(benchmark::State& state) {
  const ForwardMap P = forward_map({1.0, 1.0}, make_grid(10));
  for (auto _ : state) benchmark::DoNotOptimize(block_diagnostics(P));
}
BENCHMARK(BM_Diagnostics);

static void BM_PhaseCell(benchmark::State& state) {
  PhaseDiagramSpec spec;
  spec.sigma_hats = {0.45};
  spec.levels = {0.25};
  spec.trials = 100;
  for (auto _ : state) benchmark::DoNotOptimize(run_phase_diagram(spec, 1));
}
BENCHMARK(BM_PhaseCell)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
