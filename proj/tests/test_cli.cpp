#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sdwave/runner.hpp"
#include "testkit.hpp"

using namespace sdwave;
using testkit::begin;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& leaf) {
    fs::path dir = fs::temp_directory_path() / "sdwave_test" / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

bool parse_fails_with(const std::string& text, const std::string& needle) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

void config_defaults() {
    begin("config defaults");
    RunConfig cfg = parse_config("{}");
    TK_CHECK(cfg.solver.dt == 1e-3);
    TK_CHECK(cfg.model.basis.oversampling == 1.5);
    TK_CHECK(cfg.seed == 0);
    TK_CHECK(cfg.experiment == "simulate");
    TK_CHECK(cfg.solver.scheme == "etd2");
    TK_CHECK(cfg.model.basis.dimension == 1);
    TK_CHECK(cfg.write_csv && cfg.write_json && !cfg.write_snapshots);
}

void config_errors() {
    begin("config error reporting");
    TK_CHECK(parse_fails_with(R"({"solver": {"dt": -1}})", "solver.dt"));
    TK_CHECK(parse_fails_with(
        R"({"model": {"source": {"family": "septic"}}})", "cubic"));
    TK_CHECK(parse_fails_with(
        R"({"model": {"damping": {"family": "nope"}}})", "even-poly"));
    TK_CHECK(parse_fails_with(R"({"bogus": 1})", "bogus"));
    TK_CHECK(parse_fails_with(R"({"solver": {"dtt": 1e-3}})", "solver.dtt"));
    TK_CHECK(parse_fails_with(R"({"experiment": {"name": "dance"}})", "dance"));
    TK_CHECK(parse_fails_with(R"({"model": {"dimension": 4}})", "dimension"));
    TK_CHECK(parse_fails_with("{", "syntax"));
    TK_CHECK(parse_fails_with(R"({"experiment": {"name": "split", "k_typo": 1}})",
                              "k_typo"));
}

void config_echo_round_trip() {
    begin("config echo round trip");
    RunConfig cfg = parse_config(R"({
      "model": {"dimension": 1, "modes_per_dim": 8,
                "source": {"family": "cubic", "a": 1.0},
                "damping": {"family": "quartic", "b": 2.0},
                "forcing": {"preset": "first-mode", "amplitude": 0.5}},
      "solver": {"dt": 0.002, "horizon": 3.0},
      "experiment": {"name": "audit-energy", "levels": 2},
      "seed": 42
    })");
    RunConfig back = parse_config(echo_config(cfg));
    TK_CHECK(back.solver.dt == cfg.solver.dt);
    TK_CHECK(back.model.forcing.coeffs == cfg.model.forcing.coeffs);
    TK_CHECK(back.options.at("levels") == 2.0);
    TK_CHECK(back.seed == 42);
    TK_CHECK(back.experiment == "audit-energy");
}

void csv_round_trip() {
    begin("CSV format and round trip");
    fs::path dir = scratch("csv");
    std::vector<RunRow> rows(2);
    rows[0].time = 0.0;
    rows[0].E = 0.0;
    rows[1].time = 1.0 / 3.0;
    rows[1].E = 0.1 + 0.2;  // not exactly 0.3 in binary64
    rows[1].h1 = 1e-17;
    fs::path p = dir / "series.csv";
    emit_plotdata(rows, p.string());
    std::string text = slurp(p);
    TK_CHECK(text.rfind("time,E,L,diss_grad,diss_sigma,residual,H1_norm,H2xH1_norm\n",
                        0) == 0);
    TK_CHECK(text.find("\r") == std::string::npos);

    // parse back the last row; 17 significant digits restore the bits
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    std::stringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    TK_CHECK(std::strtod(cell.c_str(), nullptr) == 1.0 / 3.0);
    std::getline(fields, cell, ',');
    TK_CHECK(std::strtod(cell.c_str(), nullptr) == 0.1 + 0.2);
    std::getline(fields, cell, ',');
    TK_CHECK(cell.empty());  // L was not recorded
}

void snapshot_round_trip() {
    begin("snapshot binary format");
    fs::path dir = scratch("snap");
    BasisSpec b(2, 5);
    State s(b);
    for (std::size_t i = 0; i < s.w.coeffs.size(); ++i) {
        s.w.coeffs[i] = std::sin(i + 1.0) * 1e-3;
        s.v.coeffs[i] = std::cos(i + 1.0);
    }
    fs::path p = dir / "state.bin";
    write_snapshot(s, p.string());
    TK_CHECK(fs::file_size(p) == 32 + 16 * b.mode_count());
    std::string raw = slurp(p);
    TK_CHECK(raw.compare(0, 8, "SDWAVE01") == 0);
    State back = read_snapshot(p.string());
    TK_CHECK(back.w.basis == b);
    TK_CHECK(back.w.coeffs == s.w.coeffs);
    TK_CHECK(back.v.coeffs == s.v.coeffs);
}

void run_simulate_zero() {
    begin("simulate run on zero data");
    fs::path dir = scratch("zero");
    RunConfig cfg = parse_config(R"({
      "model": {"modes_per_dim": 8},
      "solver": {"dt": 0.01, "horizon": 0.1},
      "experiment": {"name": "simulate"},
      "output": {"formats": ["csv", "json", "snapshots"]}
    })");
    cfg.output_dir = dir.string();
    RunManifest man = run(cfg);
    TK_CHECK(man.pass);
    TK_CHECK(fs::exists(dir / "series.csv"));
    TK_CHECK(fs::exists(dir / "report.json"));
    TK_CHECK(fs::exists(dir / "manifest.json"));
    TK_CHECK(fs::exists(dir / "state_final.bin"));
    // forcing defaults to zero, so every metric column is exactly zero
    std::istringstream in(slurp(dir / "series.csv"));
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream fields(line);
        std::string cell;
        int col = 0;
        while (std::getline(fields, cell, ',')) {
            // skip the time column; the residual column is absent here
            if (col != 0 && col != 5 && !cell.empty())
                TK_CHECK(std::strtod(cell.c_str(), nullptr) == 0.0);
            ++col;
        }
    }
    TK_CHECK(rows == 11);
    json manifest = json::parse(slurp(dir / "manifest.json"));
    TK_CHECK(manifest["pass"].get<bool>());
    TK_CHECK(manifest["config"]["solver"]["dt"].get<double>() == 0.01);
    TK_CHECK(manifest["tool_version"].is_string());
}

void run_determinism() {
    begin("byte-identical reruns");
    const char* doc = R"({
      "model": {"modes_per_dim": 16,
                "source": {"family": "cubic", "a": 1.0},
                "forcing": {"preset": "first-mode", "amplitude": 0.5}},
      "solver": {"dt": 0.002, "horizon": 1.0, "snapshot_stride": 50},
      "experiment": {"name": "simulate"},
      "seed": 9
    })";
    fs::path d1 = scratch("det1"), d2 = scratch("det2");
    RunConfig c1 = parse_config(doc);
    c1.output_dir = d1.string();
    RunConfig c2 = parse_config(doc);
    c2.output_dir = d2.string();
    run(c1);
    run(c2);
    TK_CHECK(slurp(d1 / "series.csv") == slurp(d2 / "series.csv"));
    TK_CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
}

void run_linear_decay() {
    begin("linear-decay run");
    fs::path dir = scratch("decay");
    RunConfig cfg = parse_config(R"({
      "model": {"dimension": 1, "modes_per_dim": 1,
                "source": {"family": "odd-poly", "coeffs": [0.0]},
                "damping": {"family": "constant", "b": 0.0}},
      "solver": {"horizon": 20.0},
      "experiment": {"name": "linear-decay", "probes": 50}
    })");
    cfg.output_dir = dir.string();
    RunManifest man = run(cfg);
    TK_CHECK(man.pass);
    TK_CHECK(std::abs(man.summary.at("fitted_rate") - 0.5) < 0.01);
    json rep = json::parse(slurp(dir / "report.json"));
    TK_CHECK(std::abs(rep["analytic_rate"].get<double>() - 0.5) < 1e-12);
}

void run_validate_model() {
    begin("validate-model run");
    fs::path dir = scratch("validate");
    RunConfig cfg = parse_config(R"({
      "model": {"modes_per_dim": 8},
      "experiment": {"name": "validate-model"}
    })");
    cfg.output_dir = dir.string();
    TK_CHECK(run(cfg).pass);

    RunConfig bad = parse_config(R"({
      "model": {"modes_per_dim": 8, "damping": {"family": "constant", "b": -2.0}},
      "experiment": {"name": "validate-model"}
    })");
    bad.output_dir = scratch("validate_bad").string();
    TK_CHECK(!run(bad).pass);
}

}  // namespace

int main() {
    config_defaults();
    config_errors();
    config_echo_round_trip();
    csv_round_trip();
    snapshot_round_trip();
    run_simulate_zero();
    run_determinism();
    run_linear_decay();
    run_validate_model();
    return testkit::finish();
}
