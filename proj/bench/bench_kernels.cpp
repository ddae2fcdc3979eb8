#include <benchmark/benchmark.h>

#include "pantograph/contact.hpp"
#include "pantograph/design.hpp"
#include "pantograph/statics.hpp"

namespace {

using namespace pantograph;

DesignSpec wide_spec() {
  DesignSpec spec;
  spec.tensions = {10.0, 12.0, 14.906, 18.0};
  spec.link_bounds = {0.1, 0.3};
  spec.lever_bounds = {0.01, 0.1};
  spec.grid_step = 5e-4;
  return spec;
}

ContactScenario heave_scenario() {
  ContactScenario s;
  s.surface = SurfaceProfile::flat(0.3);
  s.heave = HeaveTrajectory::sinusoid(0.0, 0.12, 1.5);
  s.band = ForceBand::around(1.86325, 0.1);
  return s;
}

const PantographProbe kProbe{PantographConfig{}, SpringModel{}, LossModel{}};

void BM_design_parallel(benchmark::State& state) {
  const DesignSpec spec = wide_spec();
  for (auto _ : state) benchmark::DoNotOptimize(solve_design(spec));
}

void BM_design_serial(benchmark::State& state) {
  const DesignSpec spec = wide_spec();
  for (auto _ : state) benchmark::DoNotOptimize(solve_design_reference(spec));
}

void BM_sweep_parallel(benchmark::State& state) {
  const auto heights = height_grid(0.1, 0.4, 1e-5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(force_height_sweep(kProbe.config, kProbe.spring, kProbe.loss, heights));
  }
}

void BM_sweep_serial(benchmark::State& state) {
  const auto heights = height_grid(0.1, 0.4, 1e-5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        force_height_sweep_serial(kProbe.config, kProbe.spring, kProbe.loss, heights));
  }
}

void BM_simulate_parallel(benchmark::State& state) {
  const ContactScenario s = heave_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(simulate(kProbe, s));
}

void BM_simulate_serial(benchmark::State& state) {
  const ContactScenario s = heave_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(simulate_serial(kProbe, s));
}

}  // namespace

BENCHMARK(BM_design_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_design_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
