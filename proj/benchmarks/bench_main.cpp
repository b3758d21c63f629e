#include <benchmark/benchmark.h>

#include "warpcheck/curvature.hpp"
#include "warpcheck/harmonic.hpp"
#include "warpcheck/identities.hpp"
#include "warpcheck/levelset.hpp"
#include "warpcheck/odes.hpp"
#include "warpcheck/registry.hpp"

using namespace warpcheck;

static void BM_CurvatureClosedForm(benchmark::State& state) {
  const MetricProfile m = schwarzschild(1.0).profile;
  double t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curvature_at(m, t));
    t = t < 10.0 ? t + 1e-3 : 0.5;
  }
}
BENCHMARK(BM_CurvatureClosedForm);

static void BM_CurvatureOracle(benchmark::State& state) {
  const MetricProfile m = schwarzschild(1.0).profile;
  for (auto _ : state) benchmark::DoNotOptimize(curvature_oracle(m, 2.0));
}
BENCHMARK(BM_CurvatureOracle);

static void BM_HessianClosedForm(benchmark::State& state) {
  const RadialHarmonic h = canonical_harmonic(thm1_metric(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(hessian_data(h, 0.3));
}
BENCHMARK(BM_HessianClosedForm);

static void BM_HarmonicQuadrature(benchmark::State& state) {
  const RadialHarmonic h = canonical_harmonic(superharmonic_conformal(0.5, 0.05));
  for (auto _ : state) benchmark::DoNotOptimize(h.value(0.9));
}
BENCHMARK(BM_HarmonicQuadrature);

static void BM_MonotoneSeries(benchmark::State& state) {
  const RadialHarmonic h = canonical_harmonic(thm3_rcoord(1.0));
  const GridSpec grid = default_grid_minus(-50.0, 1e-3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(monotone_minus(h, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MonotoneSeries)->Arg(64)->Arg(512)->Arg(4096)->Complexity();

static void BM_IdentitySuite(benchmark::State& state) {
  const RadialHarmonic h = canonical_harmonic(thm1_metric(1.0));
  const auto levels = suite_levels(h, 20);
  for (auto _ : state) benchmark::DoNotOptimize(identity_suite(h, levels));
}
BENCHMARK(BM_IdentitySuite)->Unit(benchmark::kMillisecond);

static void BM_RiccatiIntegration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integrate_riccati(0.1, closed_form_h(-1.0, 0.1).value, 3.0));
}
BENCHMARK(BM_RiccatiIntegration);
BENCHMARK_MAIN();
