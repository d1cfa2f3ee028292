#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "gricci/functionals.hpp"

namespace {

using namespace gricci;

GroupoidMetric sinusoid(int n, double lambda) {
  const GridSpec spec(n);
  const auto kp = PeriodicField::sample(spec, [](double y) { return 0.3 * std::sin(2.0 * std::numbers::pi * y); });
  const auto u = PeriodicField::sample(spec, [](double y) { return 0.1 * std::cos(2.0 * std::numbers::pi * y); });
  GroupoidMetric g(spec, TwistedField(kp, lambda), u);
  // FFTW plans are measured on first use of a size; keep that out of the timings.
  benchmark::DoNotOptimize(scalar_curvature(g));
  return g;
}

void BM_ScalarCurvature(benchmark::State& state) {
  const GroupoidMetric g = sinusoid(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(scalar_curvature(g));
}
BENCHMARK(BM_ScalarCurvature)->RangeMultiplier(2)->Range(32, 512);

void BM_RicciRhs(benchmark::State& state) {
  const GroupoidMetric g = sinusoid(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ricci_rhs(g));
}
BENCHMARK(BM_RicciRhs)->RangeMultiplier(2)->Range(32, 512);

void BM_Step(benchmark::State& state) {
  const GroupoidMetric g = sinusoid(static_cast<int>(state.range(0)), 1.0);
  const FlowState s{0.0, g, HaarWeight::reference(g.spec())};
  const double dt = 0.5 * stability_limit(g, default_cfl(Scheme::spectral));
  for (auto _ : state) benchmark::DoNotOptimize(step(s, dt));
}
BENCHMARK(BM_Step)->RangeMultiplier(2)->Range(32, 512);

void BM_Evolve(benchmark::State& state) {
  const GroupoidMetric g = sinusoid(static_cast<int>(state.range(0)), 1.0);
  const FlowState s{0.0, g, HaarWeight::reference(g.spec())};
  EvolveControls c;
  c.checkpoint_interval = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(s, 0.1, c));
}
BENCHMARK(BM_Evolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ConjugateSolve(benchmark::State& state) {
  const GroupoidMetric g = sinusoid(static_cast<int>(state.range(0)), 1.0);
  EvolveControls c;
  c.checkpoint_interval = 0.01;
  const FlowTrajectory traj = evolve({0.0, g, HaarWeight::reference(g.spec())}, 0.1, c);
  const PeriodicField v_end = PeriodicField::constant(g.spec(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(backward_conjugate_solve(traj, v_end));
}
BENCHMARK(BM_ConjugateSolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Lambda(benchmark::State& state) {
  const GroupoidMetric g = sinusoid(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_functional(g));
}
BENCHMARK(BM_Lambda)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMicrosecond);

void BM_FFunctional(benchmark::State& state) {
  const GroupoidMetric g = sinusoid(static_cast<int>(state.range(0)), 1.0);
  const HaarWeight h = HaarWeight::reference(g.spec());
  for (auto _ : state) benchmark::DoNotOptimize(f_functional(g, h));
}
BENCHMARK(BM_FFunctional)->RangeMultiplier(2)->Range(32, 512);

}  // namespace

BENCHMARK_MAIN();
