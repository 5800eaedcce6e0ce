#include "netlearn/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "netlearn/errors.hpp"

namespace netlearn {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InputError(std::string(name) + " must be strictly positive and finite");
    }
}

double quality(const GameParams& params, int k) {
    return params.psi - 1.0 / (params.rho + params.rhobar * k);
}

}  // namespace

GameParams::GameParams(double rho_, double rhobar_, double psi_, double lambda_, double r_)
    : rho(rho_), rhobar(rhobar_), psi(psi_), lambda(lambda_), r(r_) {
    require_positive(rho, "rho");
    require_positive(rhobar, "rhobar");
    require_positive(lambda, "lambda");
    require_positive(r, "r");
    if (!std::isfinite(psi)) {
        throw InputError("psi must be finite");
    }
}

PropagationResult propagate(const DirectedNetwork& net, const StrategyProfile& profile) {
    const int n = net.size();
    if (static_cast<int>(profile.exits.size()) != n) {
        throw InputError("profile length " + std::to_string(profile.exits.size()) +
                         " does not match network size " + std::to_string(n));
    }
    for (int l : profile.exits) {
        if (l < 0) {
            throw InputError("exit rounds must be nonnegative");
        }
    }

    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t words = (un + 63) / 64;
    // held: signals an agent has absorbed (her information set).
    // seen: signals ever offered to her, absorbed or not; feeds the table.
    std::vector<std::uint64_t> held(un * words, 0), next(un * words, 0), seen(un * words, 0);
    std::vector<std::uint64_t> incoming(words);

    PropagationResult result;
    result.n = n;
    result.arrival.assign(un * un, kNoArrival);
    for (std::size_t v = 0; v < un; ++v) {
        held[v * words + v / 64] |= std::uint64_t{1} << (v % 64);
        seen[v * words + v / 64] |= std::uint64_t{1} << (v % 64);
        result.arrival[v * un + v] = 0;
    }

    // Minimal arrival paths visit distinct agents, so everything settles
    // within n rounds; one extra quiet round confirms the fixpoint.
    for (int t = 1; t <= n + 1; ++t) {
        bool changed = false;
        next = held;
        for (AgentId i = 1; i <= n; ++i) {
            const std::size_t row = static_cast<std::size_t>(i - 1) * words;
            std::fill(incoming.begin(), incoming.end(), 0);
            for (AgentId j : net.in_neighbors(i)) {
                const std::size_t jrow = static_cast<std::size_t>(j - 1) * words;
                for (std::size_t w = 0; w < words; ++w) {
                    incoming[w] |= held[jrow + w];
                }
            }
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t fresh = incoming[w] & ~seen[row + w];
                if (fresh != 0) {
                    changed = true;
                    seen[row + w] |= fresh;
                    while (fresh != 0) {
                        const int bit = std::countr_zero(fresh);
                        fresh &= fresh - 1;
                        const std::size_t source = w * 64 + static_cast<std::size_t>(bit);
                        result.arrival[source * un + static_cast<std::size_t>(i - 1)] = t;
                    }
                }
            }
            if (t <= profile.exits[static_cast<std::size_t>(i - 1)]) {
                for (std::size_t w = 0; w < words; ++w) {
                    next[row + w] |= incoming[w];
                }
            }
        }
        held.swap(next);
        if (!changed) {
            break;
        }
    }

    result.counts.assign(un, 0);
    for (std::size_t v = 0; v < un; ++v) {
        int k = 0;
        for (std::size_t w = 0; w < words; ++w) {
            k += std::popcount(held[v * words + w]);
        }
        result.counts[v] = k;
    }
    return result;
}

double payoff(const GameParams& params, AgentId i, const StrategyProfile& profile,
              const PropagationResult& prop) {
    const int l = profile.exit_of(i);
    const int k = prop.count_of(i);
    return std::pow(params.rbar(), l) * quality(params, k);
}

namespace {

// Payoff scan for agent i over l = 0..lmax, from her arrival column.
// Returns the smallest maximizer.
int scan_best_exit(const GameParams& params, const PropagationResult& prop, AgentId i, int lmax) {
    const std::size_t un = static_cast<std::size_t>(prop.n);
    const std::size_t col = static_cast<std::size_t>(i - 1);
    int best_l = 0;
    double best_u = 0.0;
    for (int l = 0; l <= lmax; ++l) {
        int k = 0;
        for (std::size_t j = 0; j < un; ++j) {
            if (prop.arrival[j * un + col] <= l) ++k;
        }
        const double u = std::pow(params.rbar(), l) * quality(params, k);
        if (l == 0 || u > best_u) {
            best_l = l;
            best_u = u;
        }
    }
    return best_l;
}

}  // namespace

int best_response(const GameParams& params, const DirectedNetwork& net, AgentId i,
                  const StrategyProfile& others) {
    if (i < 1 || i > net.size()) {
        throw InputError("unknown agent id " + std::to_string(i));
    }
    StrategyProfile probe = others;
    probe.exits[static_cast<std::size_t>(i - 1)] = 0;
    const auto prop = propagate(net, probe);
    return scan_best_exit(params, prop, i, max_path_length(net, i));
}

std::string_view to_string(SolveMethod method) {
    switch (method) {
        case SolveMethod::iterated_br_from_bottom: return "iterated_br_from_bottom";
        case SolveMethod::iterated_br_from_top: return "iterated_br_from_top";
        case SolveMethod::brute_force: return "brute_force";
    }
    return "brute_force";
}

bool EquilibriumResult::assumption1_all() const {
    return std::all_of(assumption1.begin(), assumption1.end(), [](bool b) { return b; });
}

namespace {

// Weak Nash check: no agent has a strictly improving unilateral deviation.
bool is_nash(const GameParams& params, const PropagationResult& prop,
             const StrategyProfile& profile, const std::vector<int>& lmax) {
    const std::size_t un = static_cast<std::size_t>(prop.n);
    for (std::size_t a = 0; a < un; ++a) {
        const int l_here = profile.exits[a];
        int k = 0;
        for (std::size_t j = 0; j < un; ++j) {
            if (prop.arrival[j * un + a] <= l_here) ++k;
        }
        const double u_here = std::pow(params.rbar(), l_here) * quality(params, k);
        for (int l = 0; l <= lmax[a]; ++l) {
            if (l == l_here) continue;
            int kl = 0;
            for (std::size_t j = 0; j < un; ++j) {
                if (prop.arrival[j * un + a] <= l) ++kl;
            }
            if (std::pow(params.rbar(), l) * quality(params, kl) > u_here) {
                return false;
            }
        }
    }
    return true;
}

EquilibriumResult finish_result(const GameParams& params, const DirectedNetwork& net,
                                StrategyProfile profile, SolveMethod method,
                                const std::vector<int>& lmax) {
    auto prop = propagate(net, profile);
    if (!is_nash(params, prop, profile, lmax)) {
        throw InternalError("constructed profile is not a Nash equilibrium");
    }
    EquilibriumResult eq;
    eq.profile = std::move(profile);
    eq.counts = std::move(prop.counts);
    eq.method = method;
    eq.assumption1 = check_assumption1(params, net, eq);
    return eq;
}

}  // namespace

EquilibriumResult solve_equilibrium(const GameParams& params, const DirectedNetwork& net,
                                    SweepStart from) {
    const int n = net.size();
    const auto lmax = max_path_lengths(net);

    StrategyProfile profile;
    profile.exits.assign(static_cast<std::size_t>(n), 0);
    if (from == SweepStart::top) {
        profile.exits.assign(lmax.begin(), lmax.end());
    }

    const long long max_sweeps = std::accumulate(lmax.begin(), lmax.end(), 1LL);
    long long sweeps = 0;
    for (;;) {
        bool changed = false;
        for (AgentId i = 1; i <= n; ++i) {
            const int current = profile.exit_of(i);
            const int response = best_response(params, net, i, profile);
            const bool monotone =
                from == SweepStart::bottom ? response >= current : response <= current;
            if (!monotone) {
                throw InternalError(
                    "iterated best response lost monotonicity at agent " + std::to_string(i) +
                    " (" + std::to_string(current) + " -> " + std::to_string(response) +
                    " from " + (from == SweepStart::bottom ? "bottom" : "top") +
                    "): supermodularity assumption breached on this instance");
            }
            if (response != current) {
                profile.exits[static_cast<std::size_t>(i - 1)] = response;
                changed = true;
            }
        }
        ++sweeps;
        if (!changed) {
            break;
        }
        if (sweeps > max_sweeps) {
            throw InternalError("iterated best response did not settle within sum((L_i)_max)+1 "
                                "sweeps: supermodularity assumption breached on this instance");
        }
    }

    return finish_result(params, net, std::move(profile),
                         from == SweepStart::bottom ? SolveMethod::iterated_br_from_bottom
                                                    : SolveMethod::iterated_br_from_top,
                         lmax);
}

std::vector<EquilibriumResult> enumerate_equilibria(const GameParams& params,
                                                    const DirectedNetwork& net,
                                                    std::uint64_t budget) {
    const int n = net.size();
    const auto lmax = max_path_lengths(net);

    std::uint64_t space = 1;
    for (int cap : lmax) {
        const std::uint64_t width = static_cast<std::uint64_t>(cap) + 1;
        if (space > budget / width) {
            throw BudgetError("profile space exceeds enumeration budget of " +
                              std::to_string(budget) + "; use solve_equilibrium instead");
        }
        space *= width;
    }

    std::vector<EquilibriumResult> found;
    StrategyProfile profile;
    profile.exits.assign(static_cast<std::size_t>(n), 0);
    for (;;) {
        const auto prop = propagate(net, profile);
        if (is_nash(params, prop, profile, lmax)) {
            EquilibriumResult eq;
            eq.profile = profile;
            eq.counts = prop.counts;
            eq.method = SolveMethod::brute_force;
            eq.assumption1 = check_assumption1(params, net, eq);
            found.push_back(std::move(eq));
        }
        // lexicographic odometer, least-significant digit last
        int pos = n - 1;
        while (pos >= 0 && profile.exits[static_cast<std::size_t>(pos)] ==
                               lmax[static_cast<std::size_t>(pos)]) {
            profile.exits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
        ++profile.exits[static_cast<std::size_t>(pos)];
    }
    return found;
}

std::vector<bool> check_assumption1(const GameParams& params, const DirectedNetwork& net,
                                    const EquilibriumResult& eq) {
    const auto prop = propagate(net, eq.profile);
    const std::size_t un = static_cast<std::size_t>(net.size());
    std::vector<bool> ok(un);
    for (AgentId i = 1; i <= net.size(); ++i) {
        const int cap = max_path_length(net, i);
        int k_max = 0;
        for (std::size_t j = 0; j < un; ++j) {
            if (prop.arrival[j * un + static_cast<std::size_t>(i - 1)] <= cap) ++k_max;
        }
        ok[static_cast<std::size_t>(i - 1)] =
            params.psi * (params.rho + params.rhobar * k_max) >= 1.0;
    }
    return ok;
}

std::optional<double> round_bound(const GameParams& params) {
    const double mass = (params.rho + params.rhobar) * params.psi;
    if (mass > 1.0) {
        return std::log(1.0 - 1.0 / mass) / std::log(params.rbar());
    }
    return std::nullopt;
}

std::string_view to_string(ExitRegimeCase tag) {
    switch (tag) {
        case ExitRegimeCase::a: return "a";
        case ExitRegimeCase::b: return "b";
        case ExitRegimeCase::c1: return "c1";
        case ExitRegimeCase::c2: return "c2";
    }
    return "c2";
}

ExitRegime exit_regime(const GameParams& params, const Society& society, AgentId i) {
    if (i < 1 || i > society.largest().size()) {
        throw InputError("agent " + std::to_string(i) + " never appears in the society");
    }

    const double mass = (params.rho + params.rhobar) * params.psi;
    if (mass > 1.0) {
        return ExitRegime{ExitRegimeCase::a, round_bound(params), std::nullopt};
    }
    if (params.psi <= 0.0) {
        return ExitRegime{ExitRegimeCase::b, std::nullopt, std::nullopt};
    }

    // 0 < (rho+rhobar)psi <= 1.  B_i^n is the full reach set of i in G_n;
    // its value at the largest member stands in for the n->infinity limit.
    int reach_last = 1;
    for (auto it = society.networks().rbegin(); it != society.networks().rend(); ++it) {
        if (i <= it->size()) {
            reach_last = static_cast<int>(ball(*it, i, max_path_length(*it, i)).size());
            break;
        }
    }
    const double isolation_threshold = (1.0 - params.rho * params.psi) /
                                       (params.rhobar * params.psi);
    if (reach_last < isolation_threshold) {
        return ExitRegime{ExitRegimeCase::c1, std::nullopt, std::nullopt};
    }

    // Case c2: waiting past a ball of this size cannot beat the discount.
    const double discount_threshold =
        (params.lambda + params.r - params.rho * params.r * params.psi) /
        (params.rhobar * params.r * params.psi);
    int cap = 0;
    for (const auto& net : society.networks()) {
        if (i > net.size()) continue;
        const int lmax = max_path_length(net, i);
        const int reach = static_cast<int>(ball(net, i, lmax).size());
        if (reach < discount_threshold) {
            cap = std::max(cap, lmax);
        }
    }
    return ExitRegime{ExitRegimeCase::c2, std::nullopt, cap};
}

}  // namespace netlearn
