#include <benchmark/benchmark.h>

#include "lpv/analytic_wave.hpp"
#include "lpv/catalog.hpp"
#include "lpv/pde_lab.hpp"
#include "lpv/pv.hpp"
#include "lpv/tracer.hpp"
#include "lpv/wave_grid.hpp"

using namespace lpv;

namespace {

WaveGrid gaussian_grid(int n) {
    const double dx = 2.0 / (n - 1);
    const GridGeometry g{-1.0, dx, n, 0.0, dx, n};
    return free_wave(Shape(ShapeKind::gaussian, 1.0, 0.45, 0.5), 1.0).sample(g);
}

void BM_GridPartial(benchmark::State& state) {
    const auto grid = gaussian_grid(static_cast<int>(state.range(0)));
    const int order = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(grid_partial(grid, {1, order, 4}));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.geometry().size()));
}
BENCHMARK(BM_GridPartial)->Args({201, 1})->Args({401, 1})->Args({401, 4})->Unit(benchmark::kMillisecond);

void BM_PvField(benchmark::State& state) {
    const auto grid = gaussian_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pv_field(grid, 1, 4));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.geometry().size()));
}
BENCHMARK(BM_PvField)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_PvPointAnalytic(benchmark::State& state) {
    const auto wave = damped_wave(Shape::gaussian(), 1.0, 0.3);
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pv_point(wave, static_cast<int>(state.range(0)), x, 0.7));
        x += 1e-6;
    }
}
BENCHMARK(BM_PvPointAnalytic)->DenseRange(0, 4);

void BM_TraceAnalytic(benchmark::State& state) {
    const auto wave = damped_wave(Shape::gaussian(), 1.0, 0.3);
    for (auto _ : state)
        benchmark::DoNotOptimize(trace_attribute(wave, {1, 0.0}, 0.0, 0.0, 3.0, 0.01, kAnalyticTraceTolerance));
}
BENCHMARK(BM_TraceAnalytic)->Unit(benchmark::kMicrosecond);

void BM_TransitTrace(benchmark::State& state) {
    const auto profile = MediumProfile::tanh(1.2, 0.6, 0.0, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            transit_gamma_trace(profile, {1.0, 1.0}, Shape::exponential(1.0), -1.0, 0.0, 1.0, 1e-3));
}
BENCHMARK(BM_TransitTrace)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
    const auto wave = free_wave(Shape::sech2(), 1.0);
    SolverConfig cfg;
    cfg.equation = FreeEquation{1.0};
    cfg.dx = 0.01;
    cfg.dt = 0.005;
    set_initial_from(cfg, wave);
    for (auto _ : state) benchmark::DoNotOptimize(solve(cfg));
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
