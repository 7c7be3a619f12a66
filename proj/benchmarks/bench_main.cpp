#include <benchmark/benchmark.h>

#include "su11/sweep.hpp"

using namespace su11;

namespace {

RunConfig pulsed(std::size_t points) {
  RunConfig c;
  c.regime = PumpRegime::Pulsed;
  c.points = points;
  return c;
}

void BM_PulsedJsa(benchmark::State& state) {
  SweepEngine e(pulsed(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(e.build_jsa(2.0));
}
BENCHMARK(BM_PulsedJsa)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DenseSchmidt(benchmark::State& state) {
  SweepEngine e(pulsed(static_cast<std::size_t>(state.range(0))));
  auto jsa = e.build_jsa(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_decompose(jsa, 64));
}
BENCHMARK(BM_DenseSchmidt)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_CwJsaAndSchmidt(benchmark::State& state) {
  SweepEngine e(RunConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_decompose(e.build_jsa(2.0), kAllModes));
}
BENCHMARK(BM_CwJsaAndSchmidt)->Unit(benchmark::kMillisecond);

// Full 401-point sweep at one gain, fresh cache every iteration.
void BM_CwPhaseSweep(benchmark::State& state) {
  for (auto _ : state) {
    SweepEngine e(RunConfig{});
    benchmark::DoNotOptimize(run_phase_sweep(e, 1.3));
  }
}
BENCHMARK(BM_CwPhaseSweep)->Unit(benchmark::kMillisecond);

void BM_PulsedPhaseSweep(benchmark::State& state) {
  for (auto _ : state) {
    RunConfig c = pulsed(128);
    c.phi_count = 101;
    SweepEngine e(c);
    benchmark::DoNotOptimize(run_phase_sweep(e, 1.3));
  }
}
BENCHMARK(BM_PulsedPhaseSweep)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
