#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "netlearn/network.hpp"

namespace netlearn {

// Scalars of the information exchange game.  theta ~ N(0, 1/rho), private
// noise z_i ~ N(0, 1/rhobar), Poisson communication rate lambda, exponential
// discount rate r.  The per-round discount rbar = lambda/(lambda+r) is
// always recomputed, never stored.
struct GameParams {
    double rho;
    double rhobar;
    double psi;  // information sensitiveness; any real value is legal
    double lambda;
    double r;

    GameParams(double rho, double rhobar, double psi, double lambda, double r);

    double rbar() const { return lambda / (lambda + r); }
    GameParams with_psi(double psi_n) const { return GameParams(rho, rhobar, psi_n, lambda, r); }
};

// Per-agent exit rounds l = (l_1, ..., l_n), indexed by id-1.
struct StrategyProfile {
    std::vector<int> exits;

    int exit_of(AgentId i) const { return exits[static_cast<std::size_t>(i - 1)]; }
    bool operator==(const StrategyProfile& other) const = default;
};

// Arrival-table entry for "signal never reaches the agent"; strictly larger
// than any (L_i)_max so the table stays integral.
inline constexpr int kNoArrival = std::numeric_limits<int>::max();

// Outcome of the round dynamics under a profile.  arrival(j, i) is the
// earliest round at which signal s_j is offered to agent i, with every
// intermediate relay v constrained to have absorbed it in some round
// p <= l_v.  Agent i's own exit round does not affect her column; it only
// decides what she keeps: counts[i-1] = |{j : arrival(j, i) <= l_i}|.
struct PropagationResult {
    int n = 0;
    std::vector<int> arrival;  // row-major [source-1][target-1]
    std::vector<int> counts;   // k_i, indexed by id-1

    int arrival_round(AgentId source, AgentId target) const {
        return arrival[static_cast<std::size_t>(source - 1) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(target - 1)];
    }
    int count_of(AgentId i) const { return counts[static_cast<std::size_t>(i - 1)]; }
};

PropagationResult propagate(const DirectedNetwork& net, const StrategyProfile& profile);

// U_i = rbar^{l_i} (psi - 1/(rho + rhobar k_i)).
double payoff(const GameParams& params, AgentId i, const StrategyProfile& profile,
              const PropagationResult& prop);

// Smallest l_i in {0, ..., (L_i)_max} maximizing U_i given the other
// agents' exits (the entry for i in `others` is ignored: arrivals to i do
// not depend on l_i, so a single propagation pass scans every candidate).
int best_response(const GameParams& params, const DirectedNetwork& net, AgentId i,
                  const StrategyProfile& others);

enum class SolveMethod {
    iterated_br_from_bottom,
    iterated_br_from_top,
    brute_force,
};
enum class SweepStart { bottom, top };

std::string_view to_string(SolveMethod method);

struct EquilibriumResult {
    StrategyProfile profile;
    std::vector<int> counts;          // k_i^{n,sigma*}
    SolveMethod method;
    std::vector<bool> assumption1;    // per-agent psi(rho + rhobar (k_i)_max) >= 1

    bool assumption1_all() const;
};

// Iterated best response in fixed ascending id order from the all-zero
// (bottom) or all-(L_i)_max (top) profile until a full sweep changes
// nothing.  The iterate sequence must be coordinatewise monotone and finish
// within sum((L_i)_max) + 1 sweeps; a breach of either throws InternalError
// (a supermodularity assumption violation is surfaced, not ignored).
EquilibriumResult solve_equilibrium(const GameParams& params, const DirectedNetwork& net,
                                    SweepStart from);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// Exhaustive scan of every profile for the Nash property.  Refuses with
// BudgetError when prod(1 + (L_i)_max) exceeds the budget; profiles are
// returned in lexicographic order.
std::vector<EquilibriumResult> enumerate_equilibria(
    const GameParams& params, const DirectedNetwork& net,
    std::uint64_t budget = kDefaultEnumerationBudget);

// Assumption 1 per agent: psi(rho + rhobar (k_i)_max) >= 1, where (k_i)_max
// is the count agent i would reach waiting maximally while the others play
// the given equilibrium profile.
std::vector<bool> check_assumption1(const GameParams& params, const DirectedNetwork& net,
                                    const EquilibriumResult& eq);

// Strict upper bound on any equilibrium exit round when (rho+rhobar)psi > 1:
// ln(1 - 1/((rho+rhobar)psi)) / ln(rbar).  nullopt means "max-step": the
// bound degenerates and an agent may wait until her maximum allowable step.
std::optional<double> round_bound(const GameParams& params);

// Exit-round regimes over a society, by the sign and size of
// (rho+rhobar)psi and the terminal reach set B_i^n (finite-prefix proxy for
// its limit):
//   a  — (rho+rhobar)psi > 1: rounds below the round_bound() value;
//   b  — psi <= 0: waits until the maximum allowable step;
//   c1 — 0 < (rho+rhobar)psi <= 1 with |B_i| below (1-rho psi)/(rhobar psi):
//        waits until the maximum allowable step;
//   c2 — otherwise: rounds capped by a society constant, the largest
//        (L_i^N)_max over members N with |B_i^N| < (lambda+r-rho r psi)/(rhobar r psi).
enum class ExitRegimeCase { a, b, c1, c2 };

std::string_view to_string(ExitRegimeCase tag);

struct ExitRegime {
    ExitRegimeCase tag;
    std::optional<double> round_limit;    // case a
    std::optional<int> society_step_cap;  // case c2

    bool max_step() const { return tag == ExitRegimeCase::b || tag == ExitRegimeCase::c1; }
};

ExitRegime exit_regime(const GameParams& params, const Society& society, AgentId i);

}  // namespace netlearn
