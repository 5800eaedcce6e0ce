#pragma once

// Test-only oracles, deliberately independent of the library's
// implementation paths: quadrature for erf, exhaustive path enumeration for
// graph distances, a literal set-union round simulation for propagation,
// and a full payoff rescan for best responses.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "netlearn/game.hpp"
#include "netlearn/network.hpp"

namespace oracles {

// (2/sqrt(pi)) * integral_0^x exp(-t^2) dt by adaptive Simpson quadrature.
double erf_by_quadrature(double x);

// 1 - erf(x) at full relative precision in the far tail (the direct
// subtraction drowns in roundoff past x ~ 8.6).
double erfc_by_quadrature(double x);

// Shortest path distances to `target` by exhaustive simple-path
// enumeration (no BFS); -1 where unreachable.  Usable up to n ~ 9.
std::vector<int> distances_by_enumeration(const netlearn::DirectedNetwork& net,
                                          netlearn::AgentId target);

struct NaivePropagation {
    std::vector<std::vector<int>> arrival;  // [source-1][target-1], INT_MAX when never
    std::vector<int> counts;
};

// Round-by-round simulation with std::set information sets, straight from
// the narrative: everyone always transmits everything she holds; an agent
// absorbs only in rounds t <= l_i; the arrival table records what reaches
// an agent's doorstep regardless of her own exit.
NaivePropagation propagate_by_sets(const netlearn::DirectedNetwork& net,
                                   const netlearn::StrategyProfile& profile);

// Best response by exhaustive rescan: re-propagates for every candidate
// exit round instead of exploiting own-exit arrival independence.
int best_response_by_rescan(const netlearn::GameParams& params,
                            const netlearn::DirectedNetwork& net, netlearn::AgentId i,
                            const netlearn::StrategyProfile& others);

// Deterministic, implementation-defined-free random helpers for property
// tests (std::mt19937_64 raw draws only; distributions vary across
// standard libraries).
class Random {
public:
    explicit Random(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool bernoulli(double p) { return uniform(0.0, 1.0) < p; }

    netlearn::DirectedNetwork network(int min_n, int max_n, double min_density,
                                      double max_density);
    netlearn::GameParams params();
    netlearn::StrategyProfile profile(const netlearn::DirectedNetwork& net);

private:
    std::mt19937_64 gen_;
};

}  // namespace oracles
