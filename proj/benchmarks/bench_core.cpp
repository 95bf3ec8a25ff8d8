#include <benchmark/benchmark.h>

#include "mollow/experiments.hpp"

using namespace mollow;

namespace {

DriveConfig reference_config() {
  DriveConfig cfg;
  cfg.omega_main_mhz = 3.75;
  cfg.omega_mod_mhz = 3.75;
  cfg.eps_mod_mhz = 2.08;
  return cfg;
}

void AssembleEigensolve(benchmark::State& state) {
  const auto blocks = fourier_components(reference_config());
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto eig = eigensolve(assemble(blocks, K));
    benchmark::DoNotOptimize(eig.values.data());
  }
  state.SetComplexityN(2 * (2 * K + 1));
}
BENCHMARK(AssembleEigensolve)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Complexity();

void ModeAmplitudes(benchmark::State& state) {
  const auto cfg = reference_config();
  const auto eig = eigensolve(assemble(fourier_components(cfg), 32));
  const auto sol = select_quasienergies(eig, cfg.omega_mod(),
                                        ZoneConvention::FirstZone);
  const auto match = match_initial_state(sol, InitialState{0.0, 0.0});
  for (auto _ : state) {
    auto spec = mode_amplitudes(sol, match, 5);
    benchmark::DoNotOptimize(spec.entries.data());
  }
}
BENCHMARK(ModeAmplitudes);

void TrotterSteps(benchmark::State& state) {
  const auto cfg = reference_config();
  const InitialState psi0{0.0, 0.0};
  const TraceGrid grid{0.0, 0.004, 251};
  TrotterOptions opts;
  opts.dt_step_us = 2e-4;
  for (auto _ : state) {
    auto trace = trotter_evolve(cfg, psi0, grid, opts);
    benchmark::DoNotOptimize(trace.values.data());
  }
}
BENCHMARK(TrotterSteps);

void SweepPoint(benchmark::State& state) {
  const auto cfg = reference_config();
  const std::vector<ModelTag> models{ModelTag::Floquet, ModelTag::Rwa};
  SweepOutputs outputs;
  outputs.spectrum = false;
  for (auto _ : state) {
    auto rec = solve_point(cfg, InitialState{0.0, 0.0}, models, outputs,
                           ZoneConvention::FirstZone, 16, 5, DecayModel{},
                           TraceGrid{0.0, 0.004, 1001}, 2e-4, 3);
    benchmark::DoNotOptimize(&rec);
  }
}
BENCHMARK(SweepPoint);

}  // namespace

BENCHMARK_MAIN();
