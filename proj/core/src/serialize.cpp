#include "netlearn/serialize.hpp"

#include <fstream>
#include <ostream>

#include "netlearn/errors.hpp"

namespace netlearn {

void to_json(nlohmann::json& j, const DirectedNetwork& net) {
    nlohmann::json arcs = nlohmann::json::array();
    for (const auto& [from, to] : net.arcs()) {
        arcs.push_back({from, to});
    }
    j = {{"n", net.size()}, {"arcs", std::move(arcs)}};
}

void from_json(const nlohmann::json& j, DirectedNetwork& net) {
    const int n = j.at("n").get<int>();
    std::vector<Arc> arcs;
    for (const auto& pair : j.at("arcs")) {
        if (!pair.is_array() || pair.size() != 2) {
            throw InputError("arcs must be [from, to] pairs");
        }
        arcs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    net = DirectedNetwork(n, arcs);
}

void to_json(nlohmann::json& j, const Society& society) {
    j = nlohmann::json::array();
    for (const auto& net : society.networks()) {
        j.push_back(net);
    }
}

void to_json(nlohmann::json& j, const GameParams& params) {
    j = {{"rho", params.rho},
         {"rhobar", params.rhobar},
         {"psi", params.psi},
         {"lambda", params.lambda},
         {"r", params.r}};
}

void to_json(nlohmann::json& j, const Tolerances& tol) {
    j = {{"eps", tol.eps}, {"epsbar", tol.epsbar}, {"delta", tol.delta}};
}

void to_json(nlohmann::json& j, const StrategyProfile& profile) {
    j = profile.exits;
}

void from_json(const nlohmann::json& j, StrategyProfile& profile) {
    profile.exits = j.get<std::vector<int>>();
}

void to_json(nlohmann::json& j, const EquilibriumResult& eq) {
    j = {{"profile", eq.profile},
         {"counts", eq.counts},
         {"method", to_string(eq.method)},
         {"assumption1", eq.assumption1}};
}

void from_json(const nlohmann::json& j, EquilibriumResult& eq) {
    eq.profile = j.at("profile").get<StrategyProfile>();
    eq.counts = j.at("counts").get<std::vector<int>>();
    const auto method = j.at("method").get<std::string>();
    if (method == "iterated_br_from_bottom") {
        eq.method = SolveMethod::iterated_br_from_bottom;
    } else if (method == "iterated_br_from_top") {
        eq.method = SolveMethod::iterated_br_from_top;
    } else if (method == "brute_force") {
        eq.method = SolveMethod::brute_force;
    } else {
        throw InputError("unknown solve method '" + method + "'");
    }
    eq.assumption1 = j.at("assumption1").get<std::vector<bool>>();
}

void to_json(nlohmann::json& j, const LearningVerdict& verdict) {
    j = {{"score", verdict.score},
         {"thresholds", {verdict.not_learning_below, verdict.learning_at_least}},
         {"verdict", to_string(verdict.verdict)}};
}

void to_json(nlohmann::json& j, const NetworkFreeBounds& bounds) {
    j = {{"score_all_signals", bounds.score_all_signals},
         {"score_one_signal", bounds.score_one_signal},
         {"verdict", to_string(bounds.verdict)}};
}

void to_json(nlohmann::json& j, const SimulationReport& report) {
    j = {{"trials", report.trials},
         {"failures", report.failures},
         {"p_hat", report.p_hat},
         {"ci_halfwidth", report.ci_halfwidth},
         {"per_agent_accuracy", report.per_agent_accuracy}};
}

void to_json(nlohmann::json& j, const ExitRegime& regime) {
    j = {{"case", to_string(regime.tag)}};
    if (regime.round_limit) {
        j["round_bound"] = *regime.round_limit;
    }
    if (regime.society_step_cap) {
        j["society_step_cap"] = *regime.society_step_cap;
    }
    if (regime.max_step()) {
        j["round_bound"] = "max-step";
    }
}

void to_json(nlohmann::json& j, const EquilibriumInformedReport& report) {
    j = {{"ns", report.ns},
         {"counts", report.counts},
         {"fractions", report.fractions},
         {"informed", report.informed},
         {"proxy", report.proxy}};
}

void to_json(nlohmann::json& j, const SociallyInformedReport& report) {
    nlohmann::json agents = nlohmann::json::array();
    for (const auto& agent : report.agents) {
        nlohmann::json a = {{"id", agent.id}, {"informed", agent.informed}};
        if (agent.radius) a["L"] = *agent.radius;
        if (agent.holds_from) a["holds_from_n"] = *agent.holds_from;
        agents.push_back(std::move(a));
    }
    j = {{"agents", std::move(agents)},
         {"ns", report.ns},
         {"fractions", report.fractions},
         {"proxy", report.proxy}};
}

void to_json(nlohmann::json& j, const BinomialMonotonicity& check) {
    j = {{"eps_condition", check.eps_condition},
         {"h_increasing", check.h_increasing},
         {"h", check.h}};
}

nlohmann::json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("cannot parse " + path.string() + ": " + e.what());
    }
}

DirectedNetwork load_network(const std::filesystem::path& path) {
    try {
        return load_json(path).get<DirectedNetwork>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError("bad network file " + path.string() + ": " + e.what());
    }
}

Society load_society(const std::filesystem::path& path) {
    const auto j = load_json(path);
    if (!j.is_array()) {
        throw InputError("society file " + path.string() +
                         " must hold an ordered array of networks");
    }
    try {
        std::vector<DirectedNetwork> nets;
        for (const auto& item : j) {
            nets.push_back(item.get<DirectedNetwork>());
        }
        return Society(SocietyKind::custom, std::move(nets));
    } catch (const nlohmann::json::exception& e) {
        throw InputError("bad society file " + path.string() + ": " + e.what());
    }
}

void write_rates_csv(std::ostream& out, const RateSequence& exact, const RateOrderResult& order) {
    if (exact.ns != order.ns) {
        throw InputError("rate sequences must share the same sizes");
    }
    out << "n,delta_exact,delta_minilower,envelope\n";
    char line[160];
    for (std::size_t i = 0; i < exact.ns.size(); ++i) {
        std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%.12g\n", exact.ns[i],
                      exact.deltas[i], order.minilower[i], order.envelope[i]);
        out << line;
    }
}

}  // namespace netlearn
