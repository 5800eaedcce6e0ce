#include "netlearn/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

#include "netlearn/errors.hpp"
#include "netlearn/rng.hpp"

namespace netlearn {

World sample_world(const GameParams& params, int n, std::uint64_t seed) {
    if (n < 1) {
        throw InputError("sample_world needs at least one agent");
    }
    World world;
    world.theta = rng::standard_normal(seed, 0) / std::sqrt(params.rho);
    world.signals.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        world.signals[static_cast<std::size_t>(i - 1)] =
            world.theta + rng::standard_normal(seed, static_cast<std::uint64_t>(i)) /
                              std::sqrt(params.rhobar);
    }
    return world;
}

double posterior_action(const GameParams& params, std::span<const double> signal_subset) {
    if (signal_subset.empty()) {
        throw InputError("posterior_action needs a nonempty signal subset");
    }
    double sum = 0.0;
    for (double s : signal_subset) {
        sum += s;
    }
    const double k = static_cast<double>(signal_subset.size());
    return params.rhobar * sum / (params.rho + k * params.rhobar);
}

namespace {

double log_choose(double trials, double j) {
    return std::lgamma(trials + 1.0) - std::lgamma(j + 1.0) - std::lgamma(trials - j + 1.0);
}

// P(X <= f) for X ~ Binomial(trials, p); only called with small f.
double binomial_cdf(std::uint64_t f, std::uint64_t trials, double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return f >= trials ? 1.0 : 0.0;
    const double t = static_cast<double>(trials);
    double cdf = 0.0;
    for (std::uint64_t j = 0; j <= f; ++j) {
        const double jd = static_cast<double>(j);
        cdf += std::exp(log_choose(t, jd) + jd * std::log(p) + (t - jd) * std::log1p(-p));
    }
    return std::min(cdf, 1.0);
}

// Clopper-Pearson interval halfwidth for `f` successes in `trials`, at the
// two-sided level matching a +-z normal band.
double exact_binomial_halfwidth(std::uint64_t f, std::uint64_t trials, double z) {
    const double alpha = std::erfc(z / std::sqrt(2.0));
    const double tail = alpha / 2.0;
    const double p_hat = static_cast<double>(f) / static_cast<double>(trials);

    double upper = 1.0;
    {
        double lo = p_hat, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (binomial_cdf(f, trials, mid) > tail) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        upper = 0.5 * (lo + hi);
    }
    double lower = 0.0;
    if (f > 0) {
        double lo = 0.0, hi = p_hat;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            // P(X >= f) = 1 - P(X <= f-1)
            if (1.0 - binomial_cdf(f - 1, trials, mid) < tail) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lower = 0.5 * (lo + hi);
    }
    return std::max(upper - p_hat, p_hat - lower);
}

struct Tally {
    std::uint64_t failures = 0;
    std::vector<std::uint64_t> hits;
};

}  // namespace

SimulationReport estimate_learning(const GameParams& params, const DirectedNetwork& net,
                                   const EquilibriumResult& eq, const Tolerances& tol,
                                   const SimulationConfig& cfg, int threads,
                                   std::ostream* trace) {
    if (cfg.trials < 1) {
        throw InputError("simulation needs at least one trial");
    }
    const int n = net.size();
    const std::size_t un = static_cast<std::size_t>(n);

    // Equilibrium information sets: exact signal identities, not counts.
    const auto prop = propagate(net, eq.profile);
    std::vector<std::vector<int>> sets(un);
    for (std::size_t i = 0; i < un; ++i) {
        const int exit = eq.profile.exits[i];
        for (std::size_t j = 0; j < un; ++j) {
            if (prop.arrival[j * un + i] <= exit) {
                sets[i].push_back(static_cast<int>(j));
            }
        }
    }

    const double inv_sqrt_rho = 1.0 / std::sqrt(params.rho);
    const double inv_sqrt_rhobar = 1.0 / std::sqrt(params.rhobar);
    const double wrong_threshold = tol.epsbar * n;

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, Tally& tally) {
        tally.hits.assign(un, 0);
        std::vector<double> signals(un);
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            const std::uint64_t seed = cfg.master_seed + trial;
            const double theta = rng::standard_normal(seed, 0) * inv_sqrt_rho;
            for (std::size_t i = 0; i < un; ++i) {
                signals[i] = theta + rng::standard_normal(seed, i + 1) * inv_sqrt_rhobar;
            }
            int wrong = 0;
            for (std::size_t i = 0; i < un; ++i) {
                double sum = 0.0;
                for (int j : sets[i]) {
                    sum += signals[static_cast<std::size_t>(j)];
                }
                const double x = params.rhobar * sum /
                                 (params.rho + static_cast<double>(sets[i].size()) * params.rhobar);
                if (std::abs(x - theta) <= tol.eps) {
                    ++tally.hits[i];
                } else {
                    ++wrong;
                }
            }
            const bool fail = static_cast<double>(wrong) >= wrong_threshold;
            if (fail) ++tally.failures;
            if (trace) {
                *trace << trial << ',' << theta << ',' << wrong << ',' << (fail ? 1 : 0) << '\n';
            }
        }
    };

    std::vector<Tally> tallies;
    if (trace != nullptr || threads <= 1 || cfg.trials < 2) {
        if (trace) {
            *trace << "trial,theta,wrong,fail\n";
        }
        tallies.resize(1);
        run_range(0, cfg.trials, tallies[0]);
    } else {
        const std::uint64_t workers =
            std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), cfg.trials);
        tallies.resize(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = cfg.trials / workers;
        const std::uint64_t rest = cfg.trials % workers;
        std::uint64_t begin = 0;
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t end = begin + chunk + (w < rest ? 1 : 0);
            pool.emplace_back(run_range, begin, end, std::ref(tallies[w]));
            begin = end;
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    SimulationReport report;
    report.trials = cfg.trials;
    report.per_agent_hits.assign(un, 0);
    for (const auto& tally : tallies) {
        report.failures += tally.failures;
        for (std::size_t i = 0; i < un; ++i) {
            report.per_agent_hits[i] += tally.hits[i];
        }
    }
    report.p_hat = static_cast<double>(report.failures) / static_cast<double>(report.trials);
    if (report.failures < 10) {
        report.ci_halfwidth = exact_binomial_halfwidth(report.failures, report.trials,
                                                       cfg.confidence_z);
    } else {
        report.ci_halfwidth = cfg.confidence_z *
                              std::sqrt(report.p_hat * (1.0 - report.p_hat) /
                                        static_cast<double>(report.trials));
    }
    report.per_agent_accuracy.resize(un);
    for (std::size_t i = 0; i < un; ++i) {
        report.per_agent_accuracy[i] = static_cast<double>(report.per_agent_hits[i]) /
                                       static_cast<double>(report.trials);
    }
    return report;
}

}  // namespace netlearn
