#include "netlearn/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "netlearn/errors.hpp"

namespace netlearn {

DivergenceProxy DivergenceProxy::log_threshold(double c) {
    if (!(c > 0.0)) {
        throw InputError("log threshold scale must be positive");
    }
    char label[64];
    std::snprintf(label, sizeof(label),
                  "%g*log(n) divergence proxy (finite-prefix stand-in for limits)", c);
    return DivergenceProxy{
        [c](int n) { return c * std::log(static_cast<double>(n)); },
        label,
    };
}

GameParams SocietyParams::at(int n) const {
    const auto it = psi_by_n.find(n);
    return it == psi_by_n.end() ? base : base.with_psi(it->second);
}

namespace {

void check_proxy_monotone(const DivergenceProxy& proxy, const std::vector<int>& ns) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int n : ns) {
        const double t = proxy.threshold_fn(n);
        if (t < prev) {
            throw InputError("divergence proxy threshold must be non-decreasing over the "
                             "tested sizes");
        }
        prev = t;
    }
}

std::vector<int> member_sizes(const Society& society) {
    std::vector<int> ns;
    ns.reserve(society.size());
    for (const auto& net : society.networks()) {
        ns.push_back(net.size());
    }
    return ns;
}

}  // namespace

EquilibriumInformedReport equilibrium_informed(const Society& society,
                                               const SocietyParams& params,
                                               const DivergenceProxy& proxy) {
    EquilibriumInformedReport report;
    report.ns = member_sizes(society);
    report.proxy = proxy.description;
    check_proxy_monotone(proxy, report.ns);

    for (const auto& net : society.networks()) {
        const auto eq = solve_equilibrium(params.at(net.size()), net, SweepStart::bottom);
        const double threshold = proxy.threshold_fn(net.size());
        int informed = 0;
        for (int k : eq.counts) {
            if (k >= threshold) ++informed;
        }
        report.fractions.push_back(static_cast<double>(informed) / net.size());
        report.counts.push_back(eq.counts);
    }

    const double last_threshold = proxy.threshold_fn(report.ns.back());
    for (int k : report.counts.back()) {
        report.informed.push_back(k >= last_threshold);
    }
    return report;
}

SociallyInformedReport socially_informed(const Society& society, const SocietyParams& params,
                                         const DivergenceProxy& proxy) {
    SociallyInformedReport report;
    report.ns = member_sizes(society);
    report.proxy = proxy.description;
    check_proxy_monotone(proxy, report.ns);

    const auto& last = society.largest();
    const double threshold = proxy.threshold_fn(last.size());

    for (AgentId i = 1; i <= last.size(); ++i) {
        SociallyInformedAgent agent{i, false, std::nullopt, std::nullopt};

        // L_i from the largest member: least radius whose ball clears the proxy.
        const auto dist = distances_to(last, i);
        const int reach = *std::max_element(dist.begin(), dist.end());
        std::optional<int> radius;
        for (int l = 0; l <= reach; ++l) {
            const int size = static_cast<int>(std::count_if(
                dist.begin(), dist.end(), [l](int d) { return d >= 0 && d <= l; }));
            if (size >= threshold) {
                radius = l;
                break;
            }
        }

        if (radius) {
            agent.radius = radius;
            // Positive payoff at the target radius, and waiting that far
            // strictly beats every earlier exit, holding from some member
            // through the end of the prefix.
            std::optional<int> holds_from;
            for (const auto& net : society.networks()) {
                if (i > net.size()) continue;
                const GameParams p = params.at(net.size());
                const double rbar = p.rbar();
                const auto d = distances_to(net, i);
                auto ball_size = [&](int l) {
                    return static_cast<int>(std::count_if(
                        d.begin(), d.end(), [l](int dd) { return dd >= 0 && dd <= l; }));
                };
                const double target =
                    std::pow(rbar, *radius) *
                    (p.psi - 1.0 / (p.rho + p.rhobar * ball_size(*radius)));
                bool ok = p.psi - 1.0 / (p.rho + p.rhobar * ball_size(*radius)) > 0.0;
                for (int l = 0; ok && l < *radius; ++l) {
                    ok = target >
                         std::pow(rbar, l) * (p.psi - 1.0 / (p.rho + p.rhobar * ball_size(l)));
                }
                if (ok) {
                    if (!holds_from) holds_from = net.size();
                } else {
                    holds_from.reset();
                }
            }
            if (holds_from) {
                agent.informed = true;
                agent.holds_from = holds_from;
            }
        }
        report.agents.push_back(agent);
    }

    for (std::size_t m = 0; m < report.ns.size(); ++m) {
        const int n = report.ns[m];
        int informed = 0;
        for (int idx = 0; idx < n; ++idx) {
            if (report.agents[static_cast<std::size_t>(idx)].informed) ++informed;
        }
        report.fractions.push_back(static_cast<double>(informed) / n);
    }
    return report;
}

RateSequence rate_bound_from_counts(const GameParams& params, const std::vector<int>& ns,
                                    const std::vector<std::vector<int>>& counts, double eps,
                                    double epsbar) {
    if (ns.size() != counts.size()) {
        throw InputError("rate_bound_from_counts: ns and counts must align");
    }
    if (!(epsbar > 0.0 && epsbar < 1.0)) {
        throw InputError("epsbar must lie in (0, 1)");
    }
    RateSequence rates;
    rates.ns = ns;
    for (const auto& k : counts) {
        rates.deltas.push_back((1.0 - learning_score(params, k, eps)) / epsbar);
    }
    return rates;
}

double erf_tail_bound(double x) {
    if (!(x > 0.0)) {
        throw InputError("erf_tail_bound needs x > 0");
    }
    return std::exp(-x * x / 2.0) / (x * std::sqrt(2.0 * std::numbers::pi));
}

RateOrderResult rate_order(const GameParams& params, double eps, double epsbar,
                           const std::function<double(int)>& f, const std::vector<int>& ns) {
    if (!(eps > 0.0)) {
        throw InputError("eps must be strictly positive");
    }
    if (!(epsbar > 0.0 && epsbar < 1.0)) {
        throw InputError("epsbar must lie in (0, 1)");
    }
    RateOrderResult result;
    result.ns = ns;
    double prev = -std::numeric_limits<double>::infinity();
    for (int n : ns) {
        const double fn = f(n);
        if (fn < prev) {
            throw InputError("rate_order requires a non-decreasing f over ns");
        }
        prev = fn;
        const double precision = params.rho + params.rhobar * fn;
        result.minilower.push_back(std::exp(-eps * eps * precision / 4.0) /
                                   (std::sqrt(std::numbers::pi) * epsbar * eps *
                                    std::sqrt(precision)));
        result.envelope.push_back(std::exp(-params.rhobar * eps * eps * fn / 5.0));
    }
    return result;
}

RateSequence layered_rate(const GameParams& params, const LayeredProfile& layers, double eps,
                          const std::vector<int>& ns) {
    if (layers.layer_fns.empty()) {
        throw InputError("layered_rate needs at least one layer");
    }
    const std::size_t J = layers.layer_fns.size();
    RateSequence rates;
    rates.ns = ns;
    std::vector<double> prev_f(J, -std::numeric_limits<double>::infinity());
    const double lone = 1.0 - erf(eps * std::sqrt((params.rho + params.rhobar) / 2.0));
    for (int n : ns) {
        const auto bs = layers.fractions(n);
        if (bs.size() != J) {
            throw InputError("layered_rate: fraction vector length must equal the layer count");
        }
        double total_fraction = 0.0;
        double product = 0.0;
        double above = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < J; ++j) {
            const double b = bs[j];
            if (!(b > 0.0 && b < 1.0)) {
                throw InputError("layer fractions must lie in (0, 1)");
            }
            const double fj = layers.layer_fns[j](n);
            if (fj > above) {
                throw InputError("layer functions must be ordered f_1 >= ... >= f_J");
            }
            if (fj < prev_f[j]) {
                throw InputError("each layer function must be non-decreasing in n");
            }
            above = fj;
            prev_f[j] = fj;
            total_fraction += b;
            product += b * (1.0 - erf(eps * std::sqrt((params.rho + params.rhobar * fj) / 2.0)));
        }
        if (total_fraction > 1.0 + 1e-12) {
            throw InputError("layer fractions must sum to at most 1");
        }
        product += std::max(0.0, 1.0 - total_fraction) * lone;
        rates.deltas.push_back(product);
    }
    return rates;
}

BinomialMonotonicity binomial_monotonicity_check(const GameParams& params, double eps, int m) {
    if (m < 2) {
        throw InputError("binomial_monotonicity_check needs m >= 2");
    }
    BinomialMonotonicity result;
    const double limit = -(4.0 / params.rhobar) *
                         std::log(0.5 * std::sqrt((params.rho + 2.0 * params.rhobar) /
                                                  (params.rho + params.rhobar)));
    result.eps_condition = eps * eps < limit;
    for (int x = 1; x <= m; ++x) {
        const double precision = params.rho + params.rhobar * x;
        result.h.push_back(std::pow(2.0, x - 1) / std::sqrt(precision) *
                           std::exp(-eps * eps * precision / 4.0));
    }
    result.h_increasing = true;
    for (std::size_t x = 1; x < result.h.size(); ++x) {
        if (!(result.h[x] > result.h[x - 1])) {
            result.h_increasing = false;
            break;
        }
    }
    return result;
}

AffineFit fit_affine(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InputError("fit_affine needs two aligned samples at minimum");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw InputError("fit_affine: degenerate abscissae");
    }
    AffineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace netlearn
