#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netlearn/game.hpp"
#include "netlearn/learning.hpp"
#include "netlearn/network.hpp"

namespace netlearn {

// Finite-prefix stand-in for "diverges as n -> infinity": a quantity counts
// as diverging when it reaches threshold_fn(n) at the largest tested n.
// threshold_fn must be non-decreasing over the tested sizes.
struct DivergenceProxy {
    std::function<double(int)> threshold_fn;
    std::string description;

    static DivergenceProxy log_threshold(double c = 2.0);
};

// Game parameters over a society, with optional per-population-size psi_n
// overrides (information sensitiveness may vary along a society).
struct SocietyParams {
    GameParams base;
    std::map<int, double> psi_by_n;

    GameParams at(int n) const;
};

struct RateSequence {
    std::vector<int> ns;
    std::vector<double> deltas;
};

struct EquilibriumInformedReport {
    std::vector<int> ns;
    std::vector<std::vector<int>> counts;  // per member: k_i^{n, sigma*} (bottom equilibrium)
    std::vector<double> fractions;         // per member: |EI|/n under that member's threshold
    std::vector<bool> informed;            // per agent of the largest member
    std::string proxy;
};

// Equilibrium informed agents: k_i^{n,sigma*} clears the divergence proxy at
// the largest tested n.  Uses the bottom (least) extremal equilibrium, the
// conservative choice.
EquilibriumInformedReport equilibrium_informed(const Society& society,
                                               const SocietyParams& params,
                                               const DivergenceProxy& proxy);

struct SociallyInformedAgent {
    AgentId id;
    bool informed;
    std::optional<int> radius;      // L_i: least l whose ball clears the proxy
    std::optional<int> holds_from;  // first member size from which both conditions hold to the end
};

struct SociallyInformedReport {
    std::vector<SociallyInformedAgent> agents;  // agents of the largest member
    std::vector<int> ns;
    std::vector<double> fractions;              // per member: |SI among 1..n|/n
    std::string proxy;
};

// Socially informed agents: ball B_{i,L_i} clears the divergence proxy and
// waiting L_i rounds strictly beats every earlier exit were nobody to exit,
// from some member onward.
SociallyInformedReport socially_informed(const Society& society, const SocietyParams& params,
                                         const DivergenceProxy& proxy);

// delta_n = (1/epsbar)(1 - (1/n) sum_i erf(eps sqrt((rho + rhobar k_i)/2))),
// the smallest delta certified by the sufficient learning condition.
RateSequence rate_bound_from_counts(const GameParams& params, const std::vector<int>& ns,
                                    const std::vector<std::vector<int>>& counts, double eps,
                                    double epsbar);

// Gaussian-style tail bound: 1 - erf(x) < (1/sqrt(2 pi)) (1/x) e^{-x^2/2}.
double erf_tail_bound(double x);

struct RateOrderResult {
    std::vector<int> ns;
    std::vector<double> minilower;  // (1/(sqrt(pi) epsbar eps sqrt(rho+rhobar f))) e^{-eps^2(rho+rhobar f)/4}
    std::vector<double> envelope;   // e^{-rhobar eps^2 f(n)/5}
};

// Transparent sufficient rate when k_i >= f(n) for every agent, plus the
// order envelope.  f must be non-decreasing over ns.
RateOrderResult rate_order(const GameParams& params, double eps, double epsbar,
                           const std::function<double(int)>& f, const std::vector<int>& ns);

// Layered count profile: a fraction b_n^j of agents holds at least f_j(n)
// signals, with f_1 >= ... >= f_J pointwise and each f_j non-decreasing.
struct LayeredProfile {
    std::vector<std::function<double(int)>> layer_fns;
    std::function<std::vector<double>(int)> fractions;
};

// R_n = sum_j b_n^j (1 - erf(eps sqrt((rho+rhobar f_j(n))/2)))
//     + (1 - sum_j b_n^j)(1 - erf(eps sqrt((rho+rhobar)/2))).
// Any (delta_n, epsbar_n) with delta_n * epsbar_n >= R_n certifies learning;
// the two tolerances are interchangeable in this product.
RateSequence layered_rate(const GameParams& params, const LayeredProfile& layers, double eps,
                          const std::vector<int>& ns);

struct BinomialMonotonicity {
    bool eps_condition;    // eps^2 < -(4/rhobar) ln((1/2) sqrt((rho+2rhobar)/(rho+rhobar)))
    bool h_increasing;     // h(x) = 2^{x-1} (rho+rhobar x)^{-1/2} e^{-eps^2(rho+rhobar x)/4} increasing on 1..m
    std::vector<double> h; // h(1..m)
};

BinomialMonotonicity binomial_monotonicity_check(const GameParams& params, double eps, int m);

// Least-squares slope and intercept of y against x.
struct AffineFit {
    double slope;
    double intercept;
};

AffineFit fit_affine(std::span<const double> x, std::span<const double> y);

}  // namespace netlearn
