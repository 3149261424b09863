#include <benchmark/benchmark.h>

#include "gzrep/duality.hpp"
#include "gzrep/gl_rep.hpp"
#include "gzrep/models.hpp"
#include "gzrep/orbit.hpp"
#include "gzrep/sampling.hpp"
#include "gzrep/specfun.hpp"

using namespace gzrep;

static void BM_LogGamma(benchmark::State& state) {
  cd z(0.3, -2.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(z));
    z += cd(1e-9, 0.0);
  }
}
BENCHMARK(BM_LogGamma);

static void BM_MacdonaldK(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(macdonald_k(cd(0.0, 1.0), 1.7));
}
BENCHMARK(BM_MacdonaldK);

static void BM_GeneratorApply(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const HBar h(1.0);
  Rng rng(3);
  const GzPattern p = random_pattern(N, rng);
  const GzFunction f = random_polynomial(N, {p.row(N).begin(), p.row(N).end()}, rng);
  const GzOperator e = generator({1, N}, N, h);
  for (auto _ : state) benchmark::DoNotOptimize(e.apply_at(f, p));
}
BENCHMARK(BM_GeneratorApply)->DenseRange(2, 5);

static void BM_GlRelations(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_gl_relations(N, HBar(1.0), 1, 5));
}
BENCHMARK(BM_GlRelations)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_TodaN2Batch(benchmark::State& state) {
  const SpectralParams sp{{0.5, -0.5}, HBar(1.0)};
  std::vector<std::vector<double>> xs;
  for (int k = 0; k < state.range(0); ++k) xs.push_back({-2.0 + 4.0 * k / state.range(0), 0.0});
  WaveOptions wo;
  wo.quad.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(toda_wavefunction(sp, xs, TodaMethod::direct, wo));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TodaN2Batch)->Arg(1)->Arg(21)->Unit(benchmark::kMicrosecond);

static void BM_TodaN3Direct(benchmark::State& state) {
  const SpectralParams sp{{0.6, 0.1, -0.5}, HBar(1.0)};
  WaveOptions wo;
  wo.tol = state.range(0) == 6 ? 1e-6 : 1e-10;
  wo.quad.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(toda_wavefunction(sp, std::vector<double>{0.4, -0.1, -0.3}, TodaMethod::direct, wo));
  }
}
BENCHMARK(BM_TodaN3Direct)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond)->Iterations(2);

static void BM_SutherlandN2(benchmark::State& state) {
  const SpectralParams sp{{0.5, -0.5}, HBar(1.0)};
  const std::vector<std::vector<double>> xs = {{1.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(sutherland_wavefunction(sp, xs));
}
BENCHMARK(BM_SutherlandN2)->Unit(benchmark::kMicrosecond);

static void BM_PairingN2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_pairing_duality(2, HBar(1.0), 1, 3));
}
BENCHMARK(BM_PairingN2)->Unit(benchmark::kMillisecond);

static void BM_OrbitReconstruct(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  Rng rng(8);
  const OrbitPoint p = random_orbit_point(N, rng);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_u(p));
}
BENCHMARK(BM_OrbitReconstruct)->DenseRange(2, 5);

static void BM_OrbitPoisson(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  Rng rng(9);
  const OrbitPoint p = random_orbit_point(N, rng);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_check(p));
}
BENCHMARK(BM_OrbitPoisson)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
