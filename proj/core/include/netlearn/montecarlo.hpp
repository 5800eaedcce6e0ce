#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "netlearn/game.hpp"
#include "netlearn/learning.hpp"
#include "netlearn/network.hpp"

namespace netlearn {

struct SimulationConfig {
    std::uint64_t trials = 10'000;
    std::uint64_t master_seed = 0;
    double confidence_z = 3.0;
};

// One draw of the Gaussian world: theta ~ N(0, 1/rho) and signals
// s_i = theta + z_i with independent z_i ~ N(0, 1/rhobar).
struct World {
    double theta;
    std::vector<double> signals;
};

// Fully determined by (seed, agent index); identical seeds give identical
// draws regardless of who asks first.
World sample_world(const GameParams& params, int n, std::uint64_t seed);

// Posterior mean of theta given the subset of signal values:
// rhobar * sum(s) / (rho + k rhobar) under the zero-mean prior.
double posterior_action(const GameParams& params, std::span<const double> signal_subset);

struct SimulationReport {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;                  // trials with wrong-fraction >= epsbar
    double p_hat = 0.0;                          // failures / trials
    double ci_halfwidth = 0.0;                   // z * sqrt(p(1-p)/T), exact-binomial fallback in the tail
    std::vector<std::uint64_t> per_agent_hits;   // trials with |x_i - theta| <= eps
    std::vector<double> per_agent_accuracy;      // hits / trials
};

// Estimates P(fraction of eps-inaccurate agents >= epsbar) under the given
// equilibrium.  Each agent acts on exactly her equilibrium information set
// (signal identities from the propagation arrival table, not resampled
// sets of matching size — overlapping sets correlate the per-agent events
// and the probability is over the joint draw).  Per-trial seeds derive from
// master_seed + trial index, so any partition of trials across `threads`
// workers merges to a bit-identical report.  A non-null `trace` forces a
// sequential run and streams one CSV row per trial.
SimulationReport estimate_learning(const GameParams& params, const DirectedNetwork& net,
                                   const EquilibriumResult& eq, const Tolerances& tol,
                                   const SimulationConfig& cfg, int threads = 1,
                                   std::ostream* trace = nullptr);

}  // namespace netlearn
