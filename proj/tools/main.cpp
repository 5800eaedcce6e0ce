// netlearn CLI: equilibrium solving, learning classification, rate curves,
// Monte Carlo validation and society analysis for the information exchange
// game, driven by a single JSON config.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "netlearn/errors.hpp"
#include "netlearn/version.hpp"

namespace {

int default_threads() {
    if (const char* env = std::getenv("NETLEARN_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netlearn: Bayesian information-exchange games on directed networks"};
    app.set_version_flag("--version", std::string(netlearn::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    netlearn::cli::RunOptions options;
    options.threads = default_threads();
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* config_opt =
            cmd->add_option("--config", config_path, "experiment config (JSON)");
        if (needs_config) config_opt->required();
        cmd->add_option("--out", options.out_dir, "output directory")
            ->capture_default_str();
        cmd->add_option("--threads", options.threads, "worker threads")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "override mc.master_seed");
        cmd->add_option("--trials", trials, "override mc.trials");
    };

    auto* solve = app.add_subcommand("solve", "equilibria and payoff scans");
    auto* learn = app.add_subcommand("learn", "finite population learning verdicts");
    auto* rates = app.add_subcommand("rates", "learning-rate sequences over a society");
    auto* mc = app.add_subcommand("mc", "Monte Carlo validation of the learning conditions");
    auto* society = app.add_subcommand("society", "equilibrium/socially informed analysis");
    auto* paper = app.add_subcommand("paper-examples",
                                     "reproduce the worked examples and golden outputs");
    for (auto* cmd : {solve, learn, rates, mc, society}) {
        add_common(cmd, true);
    }
    add_common(paper, false);
    mc->add_flag("--trace", options.trace, "write a per-trial CSV trace");

    CLI11_PARSE(app, argc, argv);

    for (const CLI::App* cmd : app.get_subcommands()) {
        if (cmd->count("--seed") > 0) options.seed = seed;
        if (cmd->count("--trials") > 0) options.trials = trials;
    }

    try {
        if (paper->parsed()) {
            return netlearn::cli::run_paper_examples(options);
        }
        const auto config = netlearn::cli::ExperimentConfig::load(config_path);
        if (solve->parsed()) return netlearn::cli::run_solve(config, options);
        if (learn->parsed()) return netlearn::cli::run_learn(config, options);
        if (rates->parsed()) return netlearn::cli::run_rates(config, options);
        if (mc->parsed()) return netlearn::cli::run_mc(config, options);
        if (society->parsed()) return netlearn::cli::run_society(config, options);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const netlearn::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const netlearn::InternalError& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return 3;
    } catch (const netlearn::InputError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
