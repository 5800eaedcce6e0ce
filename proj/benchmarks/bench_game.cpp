#include <benchmark/benchmark.h>

#include "netlearn/game.hpp"
#include "netlearn/network.hpp"

using namespace netlearn;

namespace {

void BM_propagate_complete(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto net = make_society(SocietyKind::complete, {n}).at(0);
    StrategyProfile profile;
    profile.exits.assign(static_cast<std::size_t>(n), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(net, profile));
    }
}
BENCHMARK(BM_propagate_complete)->Arg(16)->Arg(64)->Arg(256);

void BM_propagate_binomial(benchmark::State& state) {
    const int n = (1 << state.range(0)) - 1;
    const auto net = make_society(SocietyKind::binomial_leaf_to_root, {n}).at(0);
    StrategyProfile profile;
    profile.exits.assign(static_cast<std::size_t>(n), static_cast<int>(state.range(0)) - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(net, profile));
    }
}
BENCHMARK(BM_propagate_binomial)->Arg(5)->Arg(8)->Arg(10);

void BM_solve_equilibrium_complete(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto net = make_society(SocietyKind::complete, {n}).at(0);
    const GameParams params(0.5, 0.5, 1.02, 1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_equilibrium(params, net, SweepStart::bottom));
    }
}
BENCHMARK(BM_solve_equilibrium_complete)->Arg(16)->Arg(64)->Arg(128);

void BM_enumerate_four_agent(benchmark::State& state) {
    const DirectedNetwork net(4, {{2, 1}, {3, 1}, {4, 3}});
    const GameParams params(0.5, 0.5, 1.0, 1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_equilibria(params, net));
    }
}
BENCHMARK(BM_enumerate_four_agent);

}  // namespace

BENCHMARK_MAIN();
