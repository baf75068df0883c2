#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "sdwave/runner.hpp"
#include "sdwave/transform.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spectral solver for a strongly damped semilinear wave equation"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    unsigned long long seed = 0;
    int threads = 0;
    bool seed_set = false;

    auto* run_cmd = app.add_subcommand("run", "run the configured experiment");
    run_cmd->add_option("config", config_path, "config file (JSON)")->required();
    run_cmd->add_option("--output", output_dir, "override output directory");
    run_cmd->add_option("--seed", seed, "override the RNG seed")
        ->each([&](const std::string&) { seed_set = true; });
    run_cmd->add_option("--threads", threads, "worker thread count");

    auto* val_cmd = app.add_subcommand("validate", "parse and validate a config");
    val_cmd->add_option("config", config_path, "config file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(val_cmd)) {
            sdwave::RunConfig cfg = sdwave::load_config(config_path);
            std::cout << sdwave::echo_config(cfg) << "\n";
            return 0;
        }
        sdwave::RunConfig cfg = sdwave::load_config(config_path);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (seed_set) cfg.seed = seed;
        if (threads > 0)
            sdwave::par::set_threads(threads);
        else if (const char* env = std::getenv("SDWAVE_THREADS"))
            sdwave::par::set_threads(std::max(1, std::atoi(env)));
        sdwave::RunManifest man = sdwave::run(cfg);
        for (const auto& [k, v] : man.verdicts)
            std::cout << (v ? "[PASS] " : "[FAIL] ") << k << "\n";
        std::cout << (man.pass ? "ok" : "FAILED") << " (" << man.experiment << ", "
                  << man.wall_seconds << " s)\n";
        return man.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
