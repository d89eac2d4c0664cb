// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <numbers>

#include "srm/diagnostics.hpp"
#include "srm/measure_solution.hpp"
#include "srm/parallel.hpp"

using namespace srm;

namespace {

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_ConditionalMeasure(benchmark::State& state) {
  MeasureBuilder b;
  b.map = fractional_map();
  b.particle_count = state.range(1);
  b.window = {0, 15};
  b.init_seed_stream = 1;
  const auto noise = NoiseModel{NoiseLaw::uniform, 2}.generate(b.required_noise());
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(conditional_measure(b, noise, exec));
  state.SetItemsProcessed(state.iterations() * state.range(1));
  label(state);
}

void BM_Tsirelson(benchmark::State& state) {
  DiagnosticsConfig c;
  c.sample_size = state.range(1);
  c.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(tsirelson_statistic(c, 10));
  state.SetItemsProcessed(state.iterations() * state.range(1));
  label(state);
}

void BM_Rotation(benchmark::State& state) {
  DiagnosticsConfig c;
  c.sample_size = state.range(1);
  c.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rotation_invariance_demo(c, std::numbers::pi / 3));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  label(state);
}

}  // namespace

BENCHMARK(BM_ConditionalMeasure)->ArgsProduct({{0, 1}, {10000, 100000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Tsirelson)->ArgsProduct({{0, 1}, {100000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rotation)->ArgsProduct({{0, 1}, {100000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
