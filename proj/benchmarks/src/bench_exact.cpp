// Exact step-function algebra: integrals, distances, Fejér means and aperiodization.

#include <benchmark/benchmark.h>

#include "hartman/corpus.hpp"
#include "hartman/fejer_weil.hpp"
#include "hartman/step_function.hpp"

namespace {

using namespace hartman;

const std::vector<NamedStep>& corpus() {
  static const auto c = step_corpus();
  return c;
}

void BM_HaarIntegralCorpus(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& s : corpus()) benchmark::DoNotOptimize(haar_integral(s.f));
  }
}
BENCHMARK(BM_HaarIntegralCorpus);

void BM_DistanceOnX(benchmark::State& state) {
  const auto& f = corpus()[8].f;  // random raster on the circle
  const ExactPoint x{{Rational(3, 17)}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(distance_on_X_exact(f, x));
}
BENCHMARK(BM_DistanceOnX);

void BM_FejerApplyPlane(benchmark::State& state) {
  const auto& f = corpus()[13].f;  // random raster on the plane
  const FejerOperator op(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fejer_apply(op, f).terms().size());
}
BENCHMARK(BM_FejerApplyPlane)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FejerCertificate(benchmark::State& state) {
  const auto& f = corpus()[13].f;
  const FejerOperator op(32, 2);
  for (auto _ : state) benchmark::DoNotOptimize(certify_fejer_norm(op, f).passed);
}
BENCHMARK(BM_FejerCertificate)->Unit(benchmark::kMillisecond);

void BM_WeilCorpus(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& s : corpus()) {
      for (const auto& h : supported_subgroups(s.f.shape())) benchmark::DoNotOptimize(fiber_average(s.f, h.H).lifted);
    }
  }
}
BENCHMARK(BM_WeilCorpus)->Unit(benchmark::kMillisecond);

void BM_AperiodizeCorpus(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& s : corpus()) benchmark::DoNotOptimize(aperiodize(s.f).certificate.passed);
  }
}
BENCHMARK(BM_AperiodizeCorpus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
