#include "netlearn/learning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netlearn/errors.hpp"

namespace netlearn {

Tolerances::Tolerances(double eps_, double epsbar_, double delta_)
    : eps(eps_), epsbar(epsbar_), delta(delta_) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw InputError("eps must be strictly positive");
    }
    if (!(epsbar > 0.0 && epsbar < 1.0)) {
        throw InputError("epsbar must lie in (0, 1)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InputError("delta must lie in (0, 1)");
    }
}

double erf(double x) {
    if (x < 0.0) {
        return -erf(-x);
    }
    if (x > 6.0) {
        return 1.0;
    }
    return std::erf(x);
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Learning: return "Learning";
        case Verdict::NotLearning: return "NotLearning";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

double learning_score(const GameParams& params, std::span<const int> counts, double eps) {
    if (counts.empty()) {
        throw InputError("learning_score needs at least one signal count");
    }
    if (!(eps > 0.0)) {
        throw InputError("eps must be strictly positive");
    }
    double sum = 0.0;
    for (int k : counts) {
        if (k < 1) {
            throw InputError("signal counts must be at least 1, got " + std::to_string(k));
        }
        sum += erf(eps * std::sqrt((params.rho + params.rhobar * k) / 2.0));
    }
    return sum / static_cast<double>(counts.size());
}

LearningVerdict classify(double score, const Tolerances& tol) {
    if (!(score >= 0.0 && score <= 1.0)) {
        throw InputError("score must lie in [0, 1]");
    }
    LearningVerdict verdict;
    verdict.score = score;
    verdict.not_learning_below = (1.0 - tol.epsbar) * (1.0 - tol.delta);
    verdict.learning_at_least = 1.0 - tol.epsbar * tol.delta;
    if (score < verdict.not_learning_below) {
        verdict.verdict = Verdict::NotLearning;
    } else if (score >= verdict.learning_at_least) {
        verdict.verdict = Verdict::Learning;
    } else {
        verdict.verdict = Verdict::Indeterminate;
    }
    return verdict;
}

NetworkFreeBounds network_free_bounds(const GameParams& params, int n, const Tolerances& tol) {
    if (n < 1) {
        throw InputError("population must be at least 1");
    }
    NetworkFreeBounds bounds;
    bounds.score_all_signals = erf(tol.eps * std::sqrt((params.rho + params.rhobar * n) / 2.0));
    bounds.score_one_signal = erf(tol.eps * std::sqrt((params.rho + params.rhobar) / 2.0));
    if (bounds.score_all_signals < (1.0 - tol.epsbar) * (1.0 - tol.delta)) {
        bounds.verdict = Verdict::NotLearning;
    } else if (bounds.score_one_signal >= 1.0 - tol.epsbar * tol.delta) {
        bounds.verdict = Verdict::Learning;
    } else {
        bounds.verdict = Verdict::Indeterminate;
    }
    return bounds;
}

LearningVerdict classify_multi(const GameParams& params, const DirectedNetwork& net,
                               const Tolerances& tol,
                               std::span<const EquilibriumResult> equilibria) {
    if (equilibria.empty()) {
        throw InputError("classify_multi needs a nonempty equilibrium set");
    }
    double worst = 1.0;
    for (const auto& eq : equilibria) {
        if (static_cast<int>(eq.counts.size()) != net.size()) {
            throw InputError("equilibrium counts do not match the network size");
        }
        worst = std::min(worst, learning_score(params, eq.counts, tol.eps));
    }
    return classify(worst, tol);
}

}  // namespace netlearn
