#include <benchmark/benchmark.h>

#include "netlearn/montecarlo.hpp"

using namespace netlearn;

namespace {

void BM_estimate_learning(benchmark::State& state) {
    const DirectedNetwork net(4, {{2, 1}, {3, 1}, {4, 3}});
    const GameParams params(0.5, 0.5, 1.0, 1.0, 1.0);
    const auto eq = solve_equilibrium(params, net, SweepStart::bottom);
    const Tolerances tol(0.3, 0.5, 0.5);
    const SimulationConfig cfg{static_cast<std::uint64_t>(state.range(0)), 42, 3.0};
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_learning(params, net, eq, tol, cfg, threads));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_estimate_learning)
    ->Args({10'000, 1})
    ->Args({100'000, 1})
    ->Args({100'000, 2});

void BM_sample_world(benchmark::State& state) {
    const GameParams params(0.5, 0.5, 1.0, 1.0, 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_world(params, 32, seed++));
    }
}
BENCHMARK(BM_sample_world);

}  // namespace

BENCHMARK_MAIN();
