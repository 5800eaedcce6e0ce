#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "netlearn/game.hpp"

namespace netlearn {

// Tolerances of (eps, epsbar, delta)-learning: eps is the individual
// precision, 1-epsbar the fraction of agents that must be eps-accurate,
// 1-delta the probability with which that fraction is reached.
struct Tolerances {
    double eps;
    double epsbar;
    double delta;

    Tolerances(double eps, double epsbar, double delta);
};

// erf(x) = (2/sqrt(pi)) * integral_0^x exp(-t^2) dt, odd by construction,
// clamped to +-1 for |x| > 6.  Absolute error <= 1e-14 on |x| <= 6
// (checked against a quadrature oracle in the tests).
double erf(double x);

enum class Verdict { Learning, NotLearning, Indeterminate };

std::string_view to_string(Verdict verdict);

// Score S = (1/n) sum_i erf(eps sqrt((rho + rhobar k_i)/2)) against the two
// thresholds (1-epsbar)(1-delta) < 1-epsbar*delta.  Scores below the first
// rule learning out, scores at or above the second certify it, and the gap
// in between stays Indeterminate.
struct LearningVerdict {
    double score;
    Verdict verdict;
    double not_learning_below;   // (1-epsbar)(1-delta)
    double learning_at_least;    // 1 - epsbar*delta
};

// S = (1/n) sum_i erf(eps sqrt((rho + rhobar k_i)/2)); the expected
// fraction of eps-accurate agents.
double learning_score(const GameParams& params, std::span<const int> counts, double eps);

LearningVerdict classify(double score, const Tolerances& tol);

// Structure-free tests: k=n bounds the score from above, k=1 from below,
// so a verdict may follow from (params, n, tol) alone.
struct NetworkFreeBounds {
    double score_all_signals;  // erf(eps sqrt((rho + rhobar n)/2))
    double score_one_signal;   // erf(eps sqrt((rho + rhobar)/2))
    Verdict verdict;
};

NetworkFreeBounds network_free_bounds(const GameParams& params, int n, const Tolerances& tol);

// Conservative multi-equilibrium classification: the minimum score across
// the supplied equilibria decides (the least favorable equilibrium
// determines the learning status).
LearningVerdict classify_multi(const GameParams& params, const DirectedNetwork& net,
                               const Tolerances& tol,
                               std::span<const EquilibriumResult> equilibria);

}  // namespace netlearn
