// Window sums over realized sequences: means, coefficients and distance profiles.

#include <benchmark/benchmark.h>

#include "hartman/distance_filter.hpp"
#include "hartman/hartman_function.hpp"
#include "hartman/mean_engine.hpp"

namespace {

using namespace hartman;

const HartmanFunction& golden_cut() {
  static const auto phi = cut_sequence(Character::quadratic(-1, 1, 5, 2), Rational(1, 3));
  return phi;
}

void BM_CesaroMean(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cesaro_mean(golden_cut(), state.range(0)).value);
  state.SetItemsProcessed(state.iterations() * (2 * state.range(0) + 1));
}
BENCHMARK(BM_CesaroMean)->Arg(1000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_FourierCoefficient(benchmark::State& state) {
  const auto chi = Character::quadratic(-1, 1, 5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_coefficient(golden_cut(), chi, state.range(0)).value);
  state.SetItemsProcessed(state.iterations() * (2 * state.range(0) + 1));
}
BENCHMARK(BM_FourierCoefficient)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Cos2Mean(benchmark::State& state) {
  const auto phi = cos2_product(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cesaro_mean(phi, 100000).value);
}
BENCHMARK(BM_Cos2Mean)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_DistanceProfile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(distance_profile(golden_cut(), state.range(0), 20000).values.data());
  state.SetItemsProcessed(state.iterations() * (2 * state.range(0) + 1) * 40001);
}
BENCHMARK(BM_DistanceProfile)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
