#include "sdwave/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "sdwave/attractor.hpp"

namespace sdwave {

const char* kToolVersion = "sdwave 1.0.0";

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string cell(const std::optional<double>& v) { return v ? fmt17(*v) : ""; }

State initial_state(const RunConfig& cfg) {
    State s(cfg.model.basis);
    std::copy(cfg.initial_w.begin(), cfg.initial_w.end(), s.w.coeffs.begin());
    std::copy(cfg.initial_v.begin(), cfg.initial_v.end(), s.v.coeffs.begin());
    return s;
}

std::vector<RunRow> rows_from_record(const ModelSpec& model, const TrajectoryRecord& rec) {
    std::vector<RunRow> rows;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        const State& s = rec.states[i];
        RunRow r;
        r.time = rec.times[i];
        r.E = energy(s);
        r.L = lyapunov(model, s);
        r.diss_grad = rec.diss_grad[i];
        r.diss_sigma = rec.diss_sigma[i];
        r.h1 = h_norm(s);
        r.h2xh1 = h1_norm(s);
        rows.push_back(r);
    }
    return rows;
}

struct Outputs {
    std::vector<RunRow> rows;
    json report;
    std::vector<std::pair<std::string, State>> snapshots;
};

void exp_simulate(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    State s0 = initial_state(cfg);
    TrajectoryRecord rec = simulate(cfg.model, s0, cfg.solver);
    out.rows = rows_from_record(cfg.model, rec);
    const State& last = rec.states.back();
    man.summary["final_E"] = energy(last);
    man.summary["final_L"] = lyapunov(cfg.model, last);
    man.summary["final_time"] = rec.times.back();
    man.verdicts["finite"] = last.finite();
    out.snapshots.emplace_back("state_initial.bin", s0);
    out.snapshots.emplace_back("state_final.bin", last);
    out.report["times"] = rec.times;
}

void exp_audit_energy(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    int levels = static_cast<int>(cfg.options.at("levels"));
    if (levels < 2) throw ConfigError("\"experiment.levels\" must be >= 2");
    State s0 = initial_state(cfg);
    std::vector<double> dts, residuals;
    double dt = cfg.solver.dt;
    for (int l = 0; l < levels; ++l, dt *= 0.5) {
        SolverConfig sc = cfg.solver;
        sc.dt = dt;
        sc.snapshot_stride = std::max(1, static_cast<int>(std::llround(0.1 / dt)));
        TrajectoryRecord rec = simulate(cfg.model, s0, sc);
        EnergyLedger led = audit_energy_equality(cfg.model, rec);
        dts.push_back(dt);
        residuals.push_back(led.max_residual);
        if (l == 0) {
            out.rows = rows_from_record(cfg.model, rec);
            for (std::size_t i = 0; i < out.rows.size(); ++i)
                out.rows[i].residual = led.residual[i];
        }
    }
    double worst_order = 1e300, worst_factor = 1e300;
    for (int l = 0; l + 1 < levels; ++l) {
        double factor = residuals[l] / residuals[l + 1];
        worst_factor = std::min(worst_factor, factor);
        worst_order = std::min(worst_order, std::log2(factor));
    }
    man.summary["max_residual"] = residuals.front();
    man.summary["order_estimate"] = worst_order;
    man.summary["min_halving_factor"] = worst_factor;
    man.verdicts["order_ge_2"] = worst_order >= 2.0 || worst_factor >= 3.5;
    out.report["dts"] = dts;
    out.report["max_residuals"] = residuals;
}

void exp_linear_decay(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    int probes = static_cast<int>(cfg.options.at("probes"));
    DecayReport rep =
        measure_decay(cfg.model.basis, probes, cfg.solver.horizon, cfg.seed);
    man.summary["fitted_rate"] = rep.fitted_rate;
    man.summary["analytic_rate"] = rep.analytic_rate;
    man.summary["prefactor"] = rep.prefactor;
    man.verdicts["rate_within_2pct"] = rep.max_rel_deviation < 0.02;
    man.verdicts["prefactor_le_3"] = rep.prefactor <= 3.0;
    out.report["fitted_rate"] = rep.fitted_rate;
    out.report["analytic_rate"] = rep.analytic_rate;
    out.report["prefactor"] = rep.prefactor;
    out.report["mode_rates"] = rep.mode_rates;
}

void exp_smoothing(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    double t0 = cfg.options.at("t_min"), t1 = cfg.options.at("t_max");
    int count = static_cast<int>(cfg.options.at("t_count"));
    if (t0 <= 0.0 || t1 < t0 || count < 2)
        throw ConfigError("smoothing experiment needs 0 < t_min <= t_max, t_count >= 2");
    std::vector<double> times;
    for (int i = 0; i < count; ++i)
        times.push_back(t0 * std::pow(t1 / t0, static_cast<double>(i) / (count - 1)));
    SmoothingReport rep = measure_smoothing(cfg.model.basis, times);
    man.summary["sup_sqrt_t_A"] = rep.sup_sqrt_t_A;
    man.verdicts["finite"] = std::isfinite(rep.sup_sqrt_t_A);
    out.report["times"] = rep.times;
    out.report["amplification"] = rep.amplification;
    out.report["sup_sqrt_t_A"] = rep.sup_sqrt_t_A;
}

void exp_compare(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    int ladder = static_cast<int>(cfg.options.at("ladder"));
    State s0 = initial_state(cfg);
    State dir(cfg.model.basis);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& c : dir.w.coeffs) c = gauss(rng);
    for (double& c : dir.v.coeffs) c = gauss(rng);
    DependenceReport rep =
        continuous_dependence(cfg.model, s0, dir, cfg.solver.horizon, ladder,
                              cfg.options.at("delta0"), cfg.solver.dt);
    double lo = 1e300, hi = 0.0;
    bool monotone = true;
    for (std::size_t j = 0; j < rep.lip_ratios.size(); ++j) {
        lo = std::min(lo, rep.lip_ratios[j]);
        hi = std::max(hi, rep.lip_ratios[j]);
        if (j > 0 && rep.ratios[j] > rep.ratios[j - 1] * (1.0 + 1e-9)) monotone = false;
    }
    man.summary["lip_ratio_spread"] = hi / lo;
    man.verdicts["lip_ratio_bounded"] = hi / lo < 10.0;
    man.verdicts["ratio_monotone"] = monotone;
    out.report["deltas"] = rep.deltas;
    out.report["responses"] = rep.responses;
    out.report["ratios"] = rep.ratios;
    out.report["lip_ratios"] = rep.lip_ratios;
}

json equilibrium_json(const Equilibrium& eq) {
    json j;
    j["coeffs"] = eq.w.coeffs;
    j["residual"] = eq.residual;
    j["lyapunov"] = eq.lyapunov_value;
    j["stability_index"] = eq.stability_index;
    j["smallest_eigenvalues"] = eq.smallest_eigenvalues;
    return j;
}

EquilibriumSet build_equilibria(const RunConfig& cfg) {
    NewtonOptions opt;
    if (cfg.options.count("tol")) opt.tol = cfg.options.at("tol");
    return find_equilibria(cfg.model, static_cast<int>(cfg.options.at("starts")),
                           cfg.seed, opt);
}

void exp_equilibria(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    NewtonOptions opt;
    opt.tol = cfg.options.at("tol");
    EquilibriumSet set = find_equilibria(
        cfg.model, static_cast<int>(cfg.options.at("starts")), cfg.seed, opt);
    man.summary["count"] = static_cast<double>(set.items.size());
    man.summary["dropped_starts"] = static_cast<double>(set.dropped_starts);
    bool stationary = true;
    SolverConfig sc = cfg.solver;
    sc.horizon = 1.0;
    sc.snapshot_stride = 1 << 30;
    for (const auto& eq : set.items) {
        State s(cfg.model.basis);
        s.w = eq.w;
        TrajectoryRecord rec = simulate(cfg.model, s, sc);
        SpectralField dw = rec.states.back().w - eq.w;
        if (sobolev_norm(dw, 1.0) >= 10.0 * opt.tol) stationary = false;
    }
    man.verdicts["stationary"] = stationary;
    json items = json::array();
    for (const auto& eq : set.items) items.push_back(equilibrium_json(eq));
    out.report["equilibria"] = items;
    out.report["dropped_starts"] = set.dropped_starts;
}

void exp_omega_limit(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    EquilibriumSet set = build_equilibria(cfg);
    State s0 = initial_state(cfg);
    OmegaLimitReport rep =
        omega_limit(cfg.model, s0, cfg.solver, set, cfg.options.at("velocity_threshold"),
                    cfg.options.at("match_radius"));
    man.summary["terminal_velocity_norm"] = rep.terminal_velocity_norm;
    man.summary["terminal_time"] = rep.terminal_time;
    man.summary["matched"] = rep.matched;
    man.verdicts["conclusive"] = rep.converged;
    if (rep.converged && rep.matched >= 0)
        man.verdicts["lyapunov_descent"] =
            set.items[static_cast<std::size_t>(rep.matched)].lyapunov_value <=
            lyapunov(cfg.model, s0) + 1e-9;
    out.report["converged"] = rep.converged;
    out.report["terminal_velocity_norm"] = rep.terminal_velocity_norm;
    out.report["terminal_time"] = rep.terminal_time;
    out.report["matched"] = rep.matched;
    out.report["match_distance_h1"] = rep.match_distance_h1;
    out.report["lyapunov_plateau"] = rep.lyapunov_plateau;
}

void exp_basins(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    EquilibriumSet set = build_equilibria(cfg);
    BasinTally tally = basin_sample(
        cfg.model, static_cast<int>(cfg.options.at("ensemble")),
        cfg.options.at("radius"), cfg.seed, cfg.solver, set,
        cfg.options.at("velocity_threshold"), cfg.options.at("match_radius"));
    int total = tally.inconclusive;
    for (int h : tally.hits) total += h;
    man.summary["inconclusive"] = tally.inconclusive;
    man.verdicts["tally_complete"] =
        total == static_cast<int>(cfg.options.at("ensemble"));
    out.report["hits"] = tally.hits;
    out.report["inconclusive"] = tally.inconclusive;
    json items = json::array();
    for (const auto& eq : set.items) items.push_back(equilibrium_json(eq));
    out.report["equilibria"] = items;
}

void exp_split(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    double burn_in = cfg.options.at("burn_in");
    State s0 = initial_state(cfg);
    if (burn_in > 0.0) {
        SolverConfig bc = cfg.solver;
        bc.horizon = burn_in;
        bc.snapshot_stride = 1 << 30;
        s0 = simulate(cfg.model, s0, bc).states.back();
    }
    std::vector<int> ks;
    for (int k = static_cast<int>(cfg.options.at("k_lo"));
         k <= static_cast<int>(cfg.options.at("k_hi"));
         k += std::max(1, static_cast<int>(cfg.options.at("k_step"))))
        ks.push_back(k);
    auto reports = splitting_experiment(cfg.model, ks, s0, cfg.solver, burn_in);
    double h1_start = h1_norm(s0);
    json arr = json::array();
    int k0 = -1;
    bool finite = true;
    for (const auto& rep : reports) {
        json j;
        j["k"] = rep.k;
        j["horizon"] = rep.horizon;
        j["burn_in"] = rep.burn_in;
        j["sup_vk_h2h1"] = rep.sup_vk_h2h1;
        j["uk_energy"] = rep.uk_energy;
        j["times"] = rep.times;
        j["uk_decay_rate"] = rep.uk_decay_rate;
        j["reconstruction_error"] = rep.reconstruction_error;
        arr.push_back(j);
        if (!std::isfinite(rep.sup_vk_h2h1)) finite = false;
        if (k0 < 0 && !rep.uk_energy.empty() &&
            rep.uk_energy.back() < 1e-6 * rep.uk_energy.front())
            k0 = rep.k;
    }
    man.summary["burn_in_h1_norm"] = h1_start;
    man.summary["k0"] = k0;
    man.verdicts["finite"] = finite;
    man.verdicts["uk_decays"] = k0 >= 0;
    out.report["reports"] = arr;
    out.report["k0"] = k0;
    out.report["burn_in_state_h1"] = h1_start;
}

void exp_validate(const RunConfig& cfg, RunManifest& man, Outputs& out) {
    ValidationReport rep =
        validate_conditions(cfg.model, static_cast<int>(cfg.options.at("samples")));
    man.summary["lipschitz_c"] = rep.lipschitz_c;
    man.summary["sigma_growth_c"] = rep.sigma_growth_c;
    man.summary["liminf_margin"] = rep.liminf_margin;
    man.verdicts["conditions"] = rep.pass;
    out.report["pass"] = rep.pass;
    out.report["violations"] = rep.violations;
    out.report["warnings"] = rep.warnings;
    out.report["lipschitz_c"] = rep.lipschitz_c;
    out.report["sigma_growth_c"] = rep.sigma_growth_c;
    out.report["liminf_margin"] = rep.liminf_margin;
}

}  // namespace

void emit_plotdata(const std::vector<RunRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: keep LF on all platforms
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "time,E,L,diss_grad,diss_sigma,residual,H1_norm,H2xH1_norm\n";
    for (const auto& r : rows) {
        out << fmt17(r.time) << ',' << cell(r.E) << ',' << cell(r.L) << ','
            << cell(r.diss_grad) << ',' << cell(r.diss_sigma) << ',' << cell(r.residual)
            << ',' << cell(r.h1) << ',' << cell(r.h2xh1) << '\n';
    }
    if (!out) throw std::runtime_error("write failure on " + path);
}

void write_snapshot(const State& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    char header[32] = {};
    std::memcpy(header, "SDWAVE01", 8);
    std::uint32_t d = static_cast<std::uint32_t>(s.w.basis.dimension);
    std::uint32_t n = static_cast<std::uint32_t>(s.w.basis.modes_per_dim);
    std::uint32_t count = static_cast<std::uint32_t>(s.w.coeffs.size());
    std::memcpy(header + 8, &d, 4);
    std::memcpy(header + 12, &n, 4);
    std::memcpy(header + 16, &count, 4);
    out.write(header, 32);
    for (std::size_t i = 0; i < s.w.coeffs.size(); ++i) {
        out.write(reinterpret_cast<const char*>(&s.w.coeffs[i]), 8);
        out.write(reinterpret_cast<const char*>(&s.v.coeffs[i]), 8);
    }
    if (!out) throw std::runtime_error("write failure on " + path);
}

State read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char header[32];
    in.read(header, 32);
    if (!in || std::memcmp(header, "SDWAVE01", 8) != 0)
        throw std::runtime_error("bad snapshot header in " + path);
    std::uint32_t d, n, count;
    std::memcpy(&d, header + 8, 4);
    std::memcpy(&n, header + 12, 4);
    std::memcpy(&count, header + 16, 4);
    BasisSpec basis(static_cast<int>(d), static_cast<int>(n));
    if (basis.mode_count() != count)
        throw std::runtime_error("snapshot mode count mismatch in " + path);
    State s(basis);
    for (std::size_t i = 0; i < s.w.coeffs.size(); ++i) {
        in.read(reinterpret_cast<char*>(&s.w.coeffs[i]), 8);
        in.read(reinterpret_cast<char*>(&s.v.coeffs[i]), 8);
    }
    if (!in) throw std::runtime_error("truncated snapshot " + path);
    return s;
}

RunManifest run(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(cfg.output_dir);

    RunManifest man;
    man.experiment = cfg.experiment;
    Outputs out;

    if (cfg.experiment == "simulate")
        exp_simulate(cfg, man, out);
    else if (cfg.experiment == "audit-energy")
        exp_audit_energy(cfg, man, out);
    else if (cfg.experiment == "linear-decay")
        exp_linear_decay(cfg, man, out);
    else if (cfg.experiment == "smoothing")
        exp_smoothing(cfg, man, out);
    else if (cfg.experiment == "compare")
        exp_compare(cfg, man, out);
    else if (cfg.experiment == "equilibria")
        exp_equilibria(cfg, man, out);
    else if (cfg.experiment == "omega-limit")
        exp_omega_limit(cfg, man, out);
    else if (cfg.experiment == "basins")
        exp_basins(cfg, man, out);
    else if (cfg.experiment == "split")
        exp_split(cfg, man, out);
    else if (cfg.experiment == "validate-model")
        exp_validate(cfg, man, out);
    else
        throw ConfigError("unknown experiment " + cfg.experiment);

    fs::path dir(cfg.output_dir);
    if (cfg.write_csv && !out.rows.empty())
        emit_plotdata(out.rows, (dir / "series.csv").string());
    if (cfg.write_json) {
        std::ofstream rep(dir / "report.json", std::ios::binary);
        rep << out.report.dump(2) << '\n';
    }
    if (cfg.write_snapshots)
        for (const auto& [name, st] : out.snapshots)
            write_snapshot(st, (dir / name).string());

    for (const auto& [k, v] : man.verdicts)
        if (!v) man.pass = false;
    man.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json manifest;
    manifest["tool_version"] = kToolVersion;
    manifest["experiment"] = cfg.experiment;
    manifest["config"] = json::parse(echo_config(cfg));
    manifest["summary"] = man.summary;
    manifest["verdicts"] = man.verdicts;
    manifest["wall_seconds"] = man.wall_seconds;
    manifest["pass"] = man.pass;
    {
        std::ofstream mf(dir / "manifest.json", std::ios::binary);
        if (!mf) throw std::runtime_error("cannot write manifest.json");
        mf << manifest.dump(2) << '\n';
        if (!mf) throw std::runtime_error("write failure on manifest.json");
    }
    return man;
}

}  // namespace sdwave
