#include <benchmark/benchmark.h>

#include <array>
#include <cmath>

#include <fluctoptics/propagate.hpp>
#include <fluctoptics/qstates.hpp>

namespace fo = fluctoptics;

static void BM_SqueezedBeamEval(benchmark::State& state) {
    const auto b =
        fo::qstates::SqueezedBeam::in_medium(10.6, 3.5, 1.5, 0.0, 0.01, 0.01);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fo::qstates::e2_squeezed_beam(b, t, 0.0).value);
        t += 0.01;
    }
}
BENCHMARK(BM_SqueezedBeamEval);

static void BM_ModeSum(benchmark::State& state) {
    fo::qstates::ModeSet set;
    set.volume = 64.0;
    const int n = static_cast<int>(state.range(0));
    for (int i = 0; i < n; ++i) {
        const double omega = 1.0 + 0.1 * i;
        set.modes.push_back({{0.0, omega, 0.0}, omega, 0.5, 0.2 * i});
    }
    const std::array<double, 3> x{0.3, -0.2, 0.1};
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fo::qstates::e2_mode_sum(set, t, x).value);
        t += 0.01;
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ModeSum)->Arg(8)->Arg(64)->Arg(512);

static void BM_WaveStep(benchmark::State& state) {
    fo::propagate::ProbeGrid grid;
    grid.points = static_cast<int>(state.range(0));
    fo::propagate::ModulationModel mod;
    mod.amplitude = -0.25;
    fo::propagate::WaveRun run(
        grid, mod, 1.0, fo::propagate::VelocityForm::reciprocal,
        fo::propagate::InitialCondition::travelling_cosine(10.0, 1.0));
    for (auto _ : state) run.step();
    state.SetItemsProcessed(state.iterations() * grid.points);
}
BENCHMARK(BM_WaveStep)->Arg(512)->Arg(2048);

static void BM_Spectrum(benchmark::State& state) {
    fo::propagate::ProbeGrid grid;
    grid.points = static_cast<int>(state.range(0));
    fo::propagate::WaveRun run(
        grid, fo::propagate::ModulationModel{}, 1.0,
        fo::propagate::VelocityForm::reciprocal,
        fo::propagate::InitialCondition::travelling_cosine(10.0, 1.0));
    const fo::propagate::Snapshot snap = run.snapshot();
    for (auto _ : state)
        benchmark::DoNotOptimize(fo::propagate::spectrum(snap).magnitude[10]);
}
BENCHMARK(BM_Spectrum)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
