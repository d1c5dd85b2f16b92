// Spectrum scans and reconstruction from sampled windows.

#include <benchmark/benchmark.h>

#include "hartman/hartman_function.hpp"
#include "hartman/reconstruct.hpp"
#include "hartman/spectrum.hpp"

namespace {

using namespace hartman;

void BM_ScanCos2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::int64_t period = 1;
  for (int j = 0; j < n; ++j) period *= 3;
  const auto phi = cos2_product(n);
  SpectrumOptions o;
  o.theta = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(scan_spectrum(phi, period * 100, o).peaks.size());
}
BENCHMARK(BM_ScanCos2)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_ScanCut(benchmark::State& state) {
  const auto phi = cut_sequence(Character::quadratic(-1, 1, 2, 1), Rational(1, 3));
  SpectrumOptions o;
  o.theta = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(scan_spectrum(phi, state.range(0), o).peaks.size());
}
BENCHMARK(BM_ScanCut)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_ReconstructAlternating(benchmark::State& state) {
  const auto samples = sample(alternating(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(samples).report.fitted_l1);
}
BENCHMARK(BM_ReconstructAlternating)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
