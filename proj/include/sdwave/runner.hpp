#ifndef SDWAVE_RUNNER_HPP
#define SDWAVE_RUNNER_HPP

#include <map>
#include <optional>

#include "sdwave/config.hpp"

namespace sdwave {

struct RunManifest {
    std::string experiment;
    std::map<std::string, double> summary;   // per-experiment scalars
    std::map<std::string, bool> verdicts;    // invariant checks
    double wall_seconds = 0.0;
    bool pass = true;
};

struct RunRow {
    double time = 0.0;
    std::optional<double> E, L, diss_grad, diss_sigma, residual, h1, h2xh1;
};

/// CSV with the fixed column set; missing metrics are empty cells.
/// 17 significant digits, LF line endings.
void emit_plotdata(const std::vector<RunRow>& rows, const std::string& path);

void write_snapshot(const State& s, const std::string& path);
State read_snapshot(const std::string& path);

/// Dispatches the configured experiment and writes CSV, report JSON,
/// optional snapshots, and (last) manifest.json into cfg.output_dir.
/// Returns the manifest; pass=false means a verdict failed.
RunManifest run(const RunConfig& cfg);

extern const char* kToolVersion;

}  // namespace sdwave

#endif
