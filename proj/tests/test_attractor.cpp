#include <random>

#include "sdwave/attractor.hpp"
#include "testkit.hpp"

using namespace sdwave;
using testkit::begin;

namespace {

ModelSpec pitchfork_model(int n) {
    return ModelSpec(BasisSpec(1, n, 3.0), SourceSpec::cubic(1.3),
                     DampingSpec::quartic(1.0));
}

void unique_zero_equilibrium() {
    begin("monotone cubic has only the zero equilibrium");
    ModelSpec m(BasisSpec(1, 8, 3.0), SourceSpec::cubic(0.0), DampingSpec::quartic(1.0));
    EquilibriumSet set = find_equilibria(m, 6, 0);
    TK_CHECK(set.items.size() == 1);
    TK_CLOSE(sobolev_norm(set.items[0].w, 1.0), 0.0, 1e-9);
    TK_CHECK(set.items[0].stability_index == 0);
    TK_CHECK(set.items[0].residual < 1e-10);
}

void linear_solve_oracle() {
    begin("zero source reduces to a linear solve");
    ModelSpec m(BasisSpec(1, 6, 2.0), SourceSpec::odd_poly({0.0}),
                DampingSpec::quartic(1.0));
    m.forcing.coeffs[0] = 2.0;   // lambda = 1
    m.forcing.coeffs[2] = -4.5;  // lambda = 9
    Equilibrium eq = newton_equilibrium(m, SpectralField(m.basis));
    TK_CLOSE(eq.w.coeffs[0], 2.0, 1e-10);
    TK_CLOSE(eq.w.coeffs[2], -0.5, 1e-10);
    TK_CLOSE(eq.w.coeffs[1], 0.0, 1e-10);
}

void pitchfork_structure() {
    begin("pitchfork equilibria");
    // one-mode Galerkin oracle: c + 3c^3/(2 pi) - 1.3 c = 0, so the
    // orthonormal mode-1 coefficient is +-sqrt(0.2 pi)
    double oracle = std::sqrt(0.2 * M_PI);
    {
        ModelSpec m1 = pitchfork_model(1);
        EquilibriumSet set = find_equilibria(m1, 6, 0);
        TK_CHECK(set.items.size() == 3);
        double amp = 0.0;
        for (const auto& eq : set.items) amp = std::max(amp, std::abs(eq.w.coeffs[0]));
        TK_CLOSE(amp, oracle, 1e-2 * oracle);
    }
    ModelSpec m = pitchfork_model(16);
    EquilibriumSet set = find_equilibria(m, 8, 0);
    TK_CHECK(set.items.size() == 3);

    // Lyapunov-sorted: the two mirror wells first, the unstable zero last
    TK_CHECK(set.items[0].lyapunov_value <= set.items[1].lyapunov_value);
    TK_CHECK(set.items[1].lyapunov_value <= set.items[2].lyapunov_value);
    TK_CLOSE(sobolev_norm(set.items[2].w, 1.0), 0.0, 1e-8);
    TK_CHECK(set.items[2].stability_index == 1);
    TK_CHECK(set.items[0].stability_index == 0);
    TK_CHECK(set.items[1].stability_index == 0);

    // symmetry under w -> -w, and mode-1 amplitude near the one-mode oracle
    SpectralField sum = set.items[0].w + set.items[1].w;
    TK_CLOSE(sobolev_norm(sum, 1.0), 0.0, 1e-8);
    TK_CLOSE(std::abs(set.items[0].w.coeffs[0]), oracle, 0.05 * oracle);

    // deterministic given the seed
    EquilibriumSet again = find_equilibria(m, 8, 0);
    TK_CHECK(again.items.size() == set.items.size());
    for (std::size_t i = 0; i < set.items.size(); ++i)
        TK_CHECK(again.items[i].w.coeffs == set.items[i].w.coeffs);
}

void equilibria_are_stationary() {
    begin("equilibria are dynamically stationary");
    ModelSpec m = pitchfork_model(16);
    NewtonOptions opt;
    EquilibriumSet set = find_equilibria(m, 4, 0, opt);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 1.0;
    cfg.snapshot_stride = 1 << 30;
    for (const auto& eq : set.items) {
        State s(m.basis);
        s.w = eq.w;
        TrajectoryRecord rec = simulate(m, s, cfg);
        SpectralField drift = rec.states.back().w - eq.w;
        testkit::check(sobolev_norm(drift, 1.0) < 10.0 * opt.tol,
                       "drift " + std::to_string(sobolev_norm(drift, 1.0)));
    }
}

void omega_limits() {
    begin("omega-limit detection");
    // monotone cubic: random small data relax to zero
    ModelSpec mc(BasisSpec(1, 8, 3.0), SourceSpec::cubic(0.0), DampingSpec::quartic(1.0));
    EquilibriumSet zc = find_equilibria(mc, 4, 0);
    State s0(mc.basis);
    std::mt19937_64 rng(12);
    std::normal_distribution<double> gauss(0.0, 0.2);
    for (double& c : s0.w.coeffs) c = gauss(rng);
    for (double& c : s0.v.coeffs) c = gauss(rng);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.horizon = 60.0;
    cfg.snapshot_stride = 50;
    OmegaLimitReport rep = omega_limit(mc, s0, cfg, zc);
    TK_CHECK(rep.converged);
    TK_CHECK(rep.terminal_velocity_norm < 1e-8);
    TK_CHECK(rep.matched == 0);
    TK_CHECK(rep.lyapunov_plateau <= lyapunov(mc, s0) + 1e-9);

    // pitchfork: a nudge along mode 1 selects the matching well
    ModelSpec mp = pitchfork_model(8);
    EquilibriumSet zp = find_equilibria(mp, 6, 0);
    TK_CHECK(zp.items.size() == 3);
    cfg.horizon = 120.0;
    for (double eps : {0.01, -0.01}) {
        State nudge(mp.basis);
        nudge.w.coeffs[0] = eps;
        OmegaLimitReport r = omega_limit(mp, nudge, cfg, zp);
        TK_CHECK(r.converged);
        TK_CHECK(r.matched >= 0);
        if (r.matched >= 0) {
            const Equilibrium& hit = zp.items[static_cast<std::size_t>(r.matched)];
            TK_CHECK(hit.w.coeffs[0] * eps > 0.0);
            TK_CHECK(std::abs(hit.w.coeffs[0]) > 0.5);
        }
    }

    // starting exactly at an equilibrium matches immediately
    State at_eq(mp.basis);
    at_eq.w = zp.items[0].w;
    OmegaLimitReport r0 = omega_limit(mp, at_eq, cfg, zp);
    TK_CHECK(r0.converged);
    TK_CHECK(r0.terminal_time == 0.0);
    TK_CHECK(r0.matched == 0);
    TK_CHECK(r0.match_distance_h1 < 1e-6);
}

void basin_tallies() {
    begin("basin sampling");
    ModelSpec mp = pitchfork_model(8);
    EquilibriumSet zp = find_equilibria(mp, 6, 0);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.horizon = 120.0;
    cfg.snapshot_stride = 50;
    BasinTally tally = basin_sample(mp, 6, 0.05, 7, cfg, zp);
    int total = tally.inconclusive;
    for (int h : tally.hits) total += h;
    TK_CHECK(total == 6);
    TK_CHECK(tally.inconclusive == 0);
    // the unstable zero (sorted last) collects nothing; both wells do over
    // a symmetric ensemble of this size
    TK_CHECK(tally.hits[2] == 0);
    TK_CHECK(tally.hits[0] + tally.hits[1] == 6);
}

void splitting_reports() {
    begin("splitting experiment reports");
    ModelSpec m(BasisSpec(1, 16, 3.0), SourceSpec::cubic(1.0), DampingSpec::quartic(1.0));
    m.forcing.coeffs[0] = 0.5;
    // short burn-in toward the attractor
    State s0(m.basis);
    s0.w.coeffs[0] = 0.5;
    SolverConfig burn;
    burn.dt = 2e-3;
    burn.horizon = 10.0;
    burn.snapshot_stride = 1 << 30;
    State rel = simulate(m, s0, burn).states.back();

    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.horizon = 20.0;
    cfg.snapshot_stride = 100;
    auto reports = splitting_experiment(m, {2, 20}, rel, cfg, burn.horizon);
    TK_CHECK(reports.size() == 2);
    double h1_rel = h1_norm(rel);
    for (const auto& rep : reports) {
        TK_CHECK(std::isfinite(rep.sup_vk_h2h1));
        TK_CHECK(rep.burn_in == burn.horizon);
        TK_CHECK(rep.uk_energy.size() == rep.times.size());
        testkit::check(rep.sup_vk_h2h1 < 10.0 * h1_rel,
                       "v_k grew to " + std::to_string(rep.sup_vk_h2h1));
        TK_CHECK(rep.reconstruction_error < 1e-3);
    }
    // a truncation level above the trajectory sup-norm lets u_k die out
    const auto& wide = reports.back();
    TK_CHECK(wide.k == 20);
    testkit::check(wide.uk_energy.back() < 1e-6 * wide.uk_energy.front(),
                   "terminal u_k energy ratio " +
                       std::to_string(wide.uk_energy.back() / wide.uk_energy.front()));
    TK_CHECK(wide.uk_decay_rate > 0.0);
}

}  // namespace

int main() {
    unique_zero_equilibrium();
    linear_solve_oracle();
    pitchfork_structure();
    equilibria_are_stationary();
    omega_limits();
    basin_tallies();
    splitting_reports();
    return testkit::finish();
}
