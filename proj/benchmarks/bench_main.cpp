#include <benchmark/benchmark.h>

#include "spme/solver.hpp"

using namespace spme;

namespace {

solver::SolverConfig make_cfg(int n) {
    auto g = graphs::GraphSpec::coercive_sign(1.0, graphs::LipschitzSpec::linear(0.1));
    auto cfg = solver::make_config(std::move(g), n, {1.0});
    cfg.dt = 1e-4;
    cfg.lambda = 1e-3;
    return cfg;
}

void BM_implicit_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto cfg = make_cfg(n);
    hspace::Grid grid = hspace::make_grid(n);
    hspace::Field x = hspace::sine_mode(grid, 1, 0.1);
    for (auto _ : state) {
        auto [xn, w] = solver::implicit_step(x, x, cfg);
        benchmark::DoNotOptimize(xn.values.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_implicit_step)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_hminus1_norm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    hspace::Grid grid = hspace::make_grid(n);
    hspace::Field f = hspace::sine_mode(grid, 3, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hspace::hminus1_norm(f));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_hminus1_norm)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_hminus1_norm_spectral(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    hspace::Grid grid = hspace::make_grid(n);
    hspace::Field f = hspace::sine_mode(grid, 3, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hspace::hminus1_norm_spectral(f));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_hminus1_norm_spectral)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_short_trajectory(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto cfg = make_cfg(n);
    cfg.horizon = 0.002;  // 20 steps
    hspace::Grid grid = hspace::make_grid(n);
    hspace::Field x0 = hspace::sine_mode(grid, 1, 0.1);
    std::uint64_t id = 0;
    for (auto _ : state) {
        auto traj = solver::integrate_trajectory(cfg, x0,
                                                 noise::RngStream{9, id++, 0});
        benchmark::DoNotOptimize(traj.h1_norm.data());
    }
}
BENCHMARK(BM_short_trajectory)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
