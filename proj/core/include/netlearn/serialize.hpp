#pragma once

#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "netlearn/asymptotics.hpp"
#include "netlearn/game.hpp"
#include "netlearn/learning.hpp"
#include "netlearn/montecarlo.hpp"
#include "netlearn/network.hpp"

namespace netlearn {

// Wire formats:
//   network:  {"n": int, "arcs": [[j, i], ...]}
//   society:  [network, ...]
//   equilibrium: {"profile": [...], "counts": [...], "method": "...",
//                 "assumption1": [...]}
//   verdict:  {"score": s, "thresholds": [lo, hi], "verdict": "..."}

void to_json(nlohmann::json& j, const DirectedNetwork& net);
void from_json(const nlohmann::json& j, DirectedNetwork& net);

void to_json(nlohmann::json& j, const Society& society);

void to_json(nlohmann::json& j, const GameParams& params);
void to_json(nlohmann::json& j, const Tolerances& tol);

void to_json(nlohmann::json& j, const StrategyProfile& profile);
void from_json(const nlohmann::json& j, StrategyProfile& profile);

void to_json(nlohmann::json& j, const EquilibriumResult& eq);
void from_json(const nlohmann::json& j, EquilibriumResult& eq);

void to_json(nlohmann::json& j, const LearningVerdict& verdict);
void to_json(nlohmann::json& j, const NetworkFreeBounds& bounds);
void to_json(nlohmann::json& j, const SimulationReport& report);
void to_json(nlohmann::json& j, const ExitRegime& regime);
void to_json(nlohmann::json& j, const EquilibriumInformedReport& report);
void to_json(nlohmann::json& j, const SociallyInformedReport& report);
void to_json(nlohmann::json& j, const BinomialMonotonicity& check);

// File loaders; enforce all structural invariants and wrap parse failures
// in InputError with the offending path.
DirectedNetwork load_network(const std::filesystem::path& path);
Society load_society(const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);

// CSV emission for rate sequences: columns n,delta_exact,delta_minilower,envelope.
void write_rates_csv(std::ostream& out, const RateSequence& exact, const RateOrderResult& order);

}  // namespace netlearn

// GameParams and Tolerances validate in their constructors and have no
// default state, so deserialization goes through adl_serializer.
namespace nlohmann {

template <>
struct adl_serializer<netlearn::GameParams> {
    static netlearn::GameParams from_json(const json& j) {
        return netlearn::GameParams(j.at("rho").get<double>(), j.at("rhobar").get<double>(),
                                    j.at("psi").get<double>(), j.at("lambda").get<double>(),
                                    j.at("r").get<double>());
    }
    static void to_json(json& j, const netlearn::GameParams& params) {
        netlearn::to_json(j, params);
    }
};

template <>
struct adl_serializer<netlearn::Tolerances> {
    static netlearn::Tolerances from_json(const json& j) {
        return netlearn::Tolerances(j.at("eps").get<double>(), j.at("epsbar").get<double>(),
                                    j.at("delta").get<double>());
    }
    static void to_json(json& j, const netlearn::Tolerances& tol) { netlearn::to_json(j, tol); }
};

}  // namespace nlohmann
