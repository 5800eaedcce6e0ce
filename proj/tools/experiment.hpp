#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "netlearn/asymptotics.hpp"
#include "netlearn/game.hpp"
#include "netlearn/learning.hpp"
#include "netlearn/montecarlo.hpp"
#include "netlearn/network.hpp"

namespace netlearn::cli {

enum class SolverChoice { bottom, top, enumerate_all };

// One experiment = one JSON document.  Exactly one of network/society is
// present; file references are resolved relative to the config's directory.
struct ExperimentConfig {
    std::optional<DirectedNetwork> network;
    std::optional<Society> society;
    SocietyParams params;          // base game scalars + per-n psi overrides
    std::optional<Tolerances> tolerances;
    SolverChoice solver = SolverChoice::bottom;
    std::uint64_t budget = kDefaultEnumerationBudget;
    SimulationConfig mc;
    double proxy_scale = 2.0;

    static ExperimentConfig load(const std::filesystem::path& path);

    nlohmann::json effective() const;  // normalized form, hashed into the manifest
};

struct RunOptions {
    std::filesystem::path out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    int threads = 1;
    bool trace = false;
};

int run_solve(const ExperimentConfig& config, const RunOptions& options);
int run_learn(const ExperimentConfig& config, const RunOptions& options);
int run_rates(const ExperimentConfig& config, const RunOptions& options);
int run_mc(ExperimentConfig config, const RunOptions& options);
int run_society(const ExperimentConfig& config, const RunOptions& options);
int run_paper_examples(const RunOptions& options);

}  // namespace netlearn::cli
