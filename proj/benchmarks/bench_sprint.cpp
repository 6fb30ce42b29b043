#include <benchmark/benchmark.h>

#include "sprint/analytic.hpp"
#include "sprint/dynamics.hpp"
#include "sprint/ensemble.hpp"
#include "sprint/outcome.hpp"

using namespace sprint;

namespace {

LevelScheme scheme_for(int which) {
  switch (which) {
    case 0: return three_level_scheme();
    case 1: return four_level_scheme(-1);
    default: return rb87_scheme(0.18, 0.13);
  }
}

void BM_BuildGenerator(benchmark::State& state) {
  const auto scheme = scheme_for(static_cast<int>(state.range(0)));
  const SystemParams p;
  for (auto _ : state) benchmark::DoNotOptimize(build_generator(p, scheme));
}
BENCHMARK(BM_BuildGenerator)->DenseRange(0, 2);

void BM_ShapeGaussian(benchmark::State& state) {
  const auto env = gaussian_envelope(53.0);
  for (auto _ : state) benchmark::DoNotOptimize(shaped_schedule(env));
}
BENCHMARK(BM_ShapeGaussian)->Unit(benchmark::kMicrosecond);

// one 53 ns Gaussian trajectory including ring-down, per scheme
void BM_Trajectory(benchmark::State& state) {
  const auto scheme = scheme_for(static_cast<int>(state.range(0)));
  const auto gen = build_generator(SystemParams{}, scheme);
  const auto schedule = shaped_schedule(gaussian_envelope(53.0));
  long steps = 0;
  for (auto _ : state) {
    const auto traj = integrate(gen, schedule);
    steps += traj.stats.accepted;
    benchmark::DoNotOptimize(traj.residual_norm);
  }
  state.counters["steps"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Trajectory)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const auto scheme = rb87_scheme(0.18, 0.13);
  const auto B = branching_matrix(scheme);
  const auto traj = integrate(build_generator(SystemParams{}, scheme), shaped_schedule(gaussian_envelope(53.0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify(traj, B, scheme));
}
BENCHMARK(BM_Classify);

void BM_Ensemble(benchmark::State& state) {
  EnsembleConfig c;
  c.scheme = rb87_scheme(0.18, 0.13);
  c.n = static_cast<std::size_t>(state.range(0));
  c.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ensemble)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DetunedOptimum(benchmark::State& state) {
  const auto m = analytic::FourLevelModel::from(SystemParams{}, -1);
  for (auto _ : state) benchmark::DoNotOptimize(analytic::optimal_detuned_exact(m));
}
BENCHMARK(BM_DetunedOptimum);

}  // namespace

BENCHMARK_MAIN();
