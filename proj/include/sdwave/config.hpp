#ifndef SDWAVE_CONFIG_HPP
#define SDWAVE_CONFIG_HPP

#include <map>
#include <string>

#include "sdwave/dynamics.hpp"

namespace sdwave {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully resolved run description. Experiment-specific options live in
/// `options` with defaults already applied.
struct RunConfig {
    ModelSpec model;
    SolverConfig solver;
    std::string experiment;  // simulate | audit-energy | linear-decay | smoothing |
                             // compare | equilibria | omega-limit | basins | split |
                             // validate-model
    std::map<std::string, double> options;
    std::vector<double> initial_w;  // optional initial data (coefficients)
    std::vector<double> initial_v;
    std::string output_dir = "out";
    bool write_csv = true;
    bool write_json = true;
    bool write_snapshots = false;
    unsigned long long seed = 0;
};

/// Parses and validates a JSON document. Unknown keys are rejected at
/// every level; errors name the offending field path.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Serializes the resolved config (defaults included) back to JSON.
std::string echo_config(const RunConfig& cfg);

}  // namespace sdwave

#endif
