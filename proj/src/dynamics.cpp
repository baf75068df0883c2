#include "sdwave/dynamics.hpp"

#include <cmath>

#include "sdwave/transform.hpp"

namespace sdwave {

State::State(SpectralField w_, SpectralField v_) : w(std::move(w_)), v(std::move(v_)) {
    if (!(w.basis == v.basis)) throw std::invalid_argument("State: basis mismatch");
}

double h_norm(const State& s) {
    double a = sobolev_norm(s.w, 1.0), b = sobolev_norm(s.v, 0.0);
    return std::sqrt(a * a + b * b);
}

double h1_norm(const State& s) {
    double a = sobolev_norm(s.w, 2.0), b = sobolev_norm(s.v, 1.0);
    return std::sqrt(a * a + b * b);
}

State apply_U(const State& s, double t) {
    if (t < 0.0) throw std::invalid_argument("apply_U: t >= 0");
    State out(s.w.basis);
    auto lam = eigenvalue_table(s.w.basis);
    long long n = static_cast<long long>(lam.size());
#pragma omp parallel for schedule(static) num_threads(par::threads())
    for (long long i = 0; i < n; ++i) {
        auto idx = static_cast<std::size_t>(i);
        Mat2 p = mode_propagator(lam[idx], t).mat;
        auto r = p.apply(s.w.coeffs[idx], s.v.coeffs[idx]);
        out.w.coeffs[idx] = r[0];
        out.v.coeffs[idx] = r[1];
    }
    return out;
}

SpectralField nonlinear_forcing(const ModelSpec& model, const State& s) {
    GridField wg = to_grid(s.w);
    GridField vg = to_grid(s.v);
    GridField ng(s.w.basis);
    long long n = static_cast<long long>(ng.values.size());
#pragma omp parallel for schedule(static) num_threads(par::threads())
    for (long long i = 0; i < n; ++i) {
        auto idx = static_cast<std::size_t>(i);
        double w = wg.values[idx];
        ng.values[idx] = -model.source.f(w) - model.damping.sigma(w) * vg.values[idx];
    }
    SpectralField out = to_coeffs(ng);
    out += model.forcing;
    return out;
}

Integrator::Integrator(const ModelSpec& model, double dt, std::string scheme)
    : model_(model), dt_(dt), second_order_(scheme != "etd1") {
    if (dt <= 0.0) throw std::invalid_argument("Integrator: dt > 0");
    if (scheme != "etd1" && scheme != "etd2")
        throw std::invalid_argument("Integrator: unknown scheme " + scheme);
    lambda_ = eigenvalue_table(model.basis);
    tab_.reserve(lambda_.size());
    for (double lam : lambda_) tab_.push_back(etd_coeffs(lam, dt));
}

namespace {

// y1 = E y + P (0, n): the forcing sits in the velocity slot, so only the
// second column of P contributes.
void advance(const std::vector<EtdCoeffs>& tab, const State& y, const SpectralField& n,
             State& out, bool use_phi1) {
    for (std::size_t i = 0; i < tab.size(); ++i) {
        const Mat2& e = tab[i].exp_h;
        const Mat2& p = use_phi1 ? tab[i].phi1_h : tab[i].phi2_h;
        out.w.coeffs[i] = e.a11 * y.w.coeffs[i] + e.a12 * y.v.coeffs[i] + p.a12 * n.coeffs[i];
        out.v.coeffs[i] = e.a21 * y.w.coeffs[i] + e.a22 * y.v.coeffs[i] + p.a22 * n.coeffs[i];
    }
}

void correct(const std::vector<EtdCoeffs>& tab, const SpectralField& dn, State& out) {
    for (std::size_t i = 0; i < tab.size(); ++i) {
        const Mat2& p = tab[i].phi2_h;
        out.w.coeffs[i] += p.a12 * dn.coeffs[i];
        out.v.coeffs[i] += p.a22 * dn.coeffs[i];
    }
}

}  // namespace

State Integrator::step(const State& s, double t_now) const {
    SpectralField n0 = nonlinear_forcing(model_, s);
    State a(model_.basis);
    advance(tab_, s, n0, a, true);
    if (second_order_) {
        SpectralField n1 = nonlinear_forcing(model_, a);
        n1 -= n0;
        correct(tab_, n1, a);
    }
    if (!a.finite()) throw BlowUpError(t_now);
    return a;
}

State Integrator::step_forced(const State& s,
                              const std::function<SpectralField(const State&, bool)>& forcing,
                              double t_now) const {
    SpectralField n0 = forcing(s, false);
    State a(model_.basis);
    advance(tab_, s, n0, a, true);
    if (second_order_) {
        SpectralField n1 = forcing(a, true);
        n1 -= n0;
        correct(tab_, n1, a);
    }
    if (!a.finite()) throw BlowUpError(t_now);
    return a;
}

double stability_dt_hint(const ModelSpec& model, const State& s0) {
    GridField wg = to_grid(s0.w);
    double stiff = 1.0;
    for (double w : wg.values)
        stiff = std::max(stiff, std::abs(model.source.fprime(w)) + model.damping.sigma(w));
    return 1.0 / stiff;
}

namespace {

double sigma_dissipation(const ModelSpec& model, const State& s) {
    GridField wg = to_grid(s.w);
    GridField vg = to_grid(s.v);
    double acc = 0.0;
    for (std::size_t i = 0; i < wg.values.size(); ++i)
        acc += model.damping.sigma(wg.values[i]) * vg.values[i] * vg.values[i];
    return acc * quadrature_weight(s.w.basis);
}

}  // namespace

TrajectoryRecord simulate(const ModelSpec& model, const State& s0, const SolverConfig& cfg) {
    if (cfg.dt > cfg.horizon) throw std::invalid_argument("simulate: dt <= horizon required");
    Integrator integ(model, cfg.dt, cfg.scheme);
    long long steps = static_cast<long long>(std::llround(cfg.horizon / cfg.dt));
    int stride = cfg.snapshot_stride < 1 ? 1 : cfg.snapshot_stride;

    TrajectoryRecord rec;
    State cur = s0;
    double d1 = 0.0, d2 = 0.0;
    double g1_prev = std::pow(sobolev_norm(cur.v, 1.0), 2);
    double g2_prev = sigma_dissipation(model, cur);

    auto record = [&](long long i) {
        rec.times.push_back(i * cfg.dt);
        rec.states.push_back(cur);
        rec.diss_grad.push_back(d1);
        rec.diss_sigma.push_back(d2);
    };
    record(0);
    for (long long i = 1; i <= steps; ++i) {
        cur = integ.step(cur, (i - 1) * cfg.dt);
        double g1 = std::pow(sobolev_norm(cur.v, 1.0), 2);
        double g2 = sigma_dissipation(model, cur);
        d1 += 0.5 * cfg.dt * (g1_prev + g1);
        d2 += 0.5 * cfg.dt * (g2_prev + g2);
        g1_prev = g1;
        g2_prev = g2;
        if (i % stride == 0 || i == steps) record(i);
    }
    return rec;
}

State duhamel_C(const ModelSpec& model, const State& s0, double t, double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.horizon = t;
    cfg.snapshot_stride = 1;
    State out(model.basis);
    if (t <= 0.0) return out;
    TrajectoryRecord rec = simulate(model, s0, cfg);
    auto lam = eigenvalue_table(model.basis);
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        double wq = (i == 0 || i + 1 == rec.times.size()) ? 0.5 * dt : dt;
        SpectralField phi = nonlinear_forcing(model, rec.states[i]);
        double tau = t - rec.times[i];
        for (std::size_t k = 0; k < lam.size(); ++k) {
            Mat2 p = mode_propagator(lam[k], tau).mat;
            out.w.coeffs[k] += wq * p.a12 * phi.coeffs[k];
            out.v.coeffs[k] += wq * p.a22 * phi.coeffs[k];
        }
    }
    return out;
}

SplitTrajectories integrate_split(const ModelSpec& model, int k, const State& s_start,
                                  const SolverConfig& cfg) {
    if (k < 1) throw std::invalid_argument("integrate_split: k >= 1");
    Integrator integ(model, cfg.dt, cfg.scheme);
    long long steps = static_cast<long long>(std::llround(cfg.horizon / cfg.dt));
    int stride = cfg.snapshot_stride < 1 ? 1 : cfg.snapshot_stride;

    ScalarFn fk = truncate_source(model.source, k);
    ScalarFn sigk = truncate_damping(model.damping, k);

    State w_cur = s_start;
    State v_cur(model.basis);  // zero data
    State u_cur = s_start;     // full data

    SplitTrajectories out;
    double vd1 = 0.0, vd2 = 0.0, ud1 = 0.0;
    double wd1 = 0.0, wd2 = 0.0;
    double wg1_prev = std::pow(sobolev_norm(w_cur.v, 1.0), 2);
    double wg2_prev = sigma_dissipation(model, w_cur);
    double vg1_prev = 0.0, ug1_prev = std::pow(sobolev_norm(u_cur.v, 1.0), 2);

    auto record = [&](long long i) {
        double t = i * cfg.dt;
        out.background.times.push_back(t);
        out.background.states.push_back(w_cur);
        out.background.diss_grad.push_back(wd1);
        out.background.diss_sigma.push_back(wd2);
        out.vk.times.push_back(t);
        out.vk.states.push_back(v_cur);
        out.vk.diss_grad.push_back(vd1);
        out.vk.diss_sigma.push_back(vd2);
        out.uk.times.push_back(t);
        out.uk.states.push_back(u_cur);
        out.uk.diss_grad.push_back(ud1);
        out.uk.diss_sigma.push_back(0.0);
    };
    record(0);

    GridField wg_cur = to_grid(w_cur.w);
    GridField wtg_cur = to_grid(w_cur.v);
    double qw = quadrature_weight(model.basis);

    for (long long i = 1; i <= steps; ++i) {
        double t0 = (i - 1) * cfg.dt;
        State w_next = integ.step(w_cur, t0);
        GridField wg_next = to_grid(w_next.w);
        GridField wtg_next = to_grid(w_next.v);

        // (5.1): truncated system driven by the background
        State v_next = integ.step_forced(
            v_cur,
            [&](const State& y, bool end) {
                const GridField& wg = end ? wg_next : wg_cur;
                GridField yg = to_grid(y.v);
                GridField ng(model.basis);
                for (std::size_t j = 0; j < ng.values.size(); ++j)
                    ng.values[j] = -fk(wg.values[j]) - sigk(wg.values[j]) * yg.values[j];
                SpectralField n = to_coeffs(ng);
                n += model.forcing;
                return n;
            },
            t0);
        GridField vtg_cur = to_grid(v_cur.v);
        GridField vtg_next = to_grid(v_next.v);

        // (5.2): remainder; forcing depends on the background and v_k only
        State u_next = integ.step_forced(
            u_cur,
            [&](const State&, bool end) {
                const GridField& wg = end ? wg_next : wg_cur;
                const GridField& wtg = end ? wtg_next : wtg_cur;
                const GridField& vtg = end ? vtg_next : vtg_cur;
                GridField ng(model.basis);
                for (std::size_t j = 0; j < ng.values.size(); ++j) {
                    double w = wg.values[j];
                    ng.values[j] = fk(w) - model.source.f(w) -
                                   model.damping.sigma(w) * wtg.values[j] +
                                   sigk(w) * vtg.values[j];
                }
                return to_coeffs(ng);
            },
            t0);

        // dissipation bookkeeping (trapezoid)
        double wg1 = std::pow(sobolev_norm(w_next.v, 1.0), 2);
        double wg2 = sigma_dissipation(model, w_next);
        wd1 += 0.5 * cfg.dt * (wg1_prev + wg1);
        wd2 += 0.5 * cfg.dt * (wg2_prev + wg2);
        wg1_prev = wg1;
        wg2_prev = wg2;

        double vg1 = std::pow(sobolev_norm(v_next.v, 1.0), 2);
        vd1 += 0.5 * cfg.dt * (vg1_prev + vg1);
        vg1_prev = vg1;
        double vsig = 0.0;
        for (std::size_t j = 0; j < wg_next.values.size(); ++j)
            vsig += sigk(wg_next.values[j]) * vtg_next.values[j] * vtg_next.values[j];
        vd2 += cfg.dt * vsig * qw;  // rectangle rule is enough for a report metric

        double ug1 = std::pow(sobolev_norm(u_next.v, 1.0), 2);
        ud1 += 0.5 * cfg.dt * (ug1_prev + ug1);
        ug1_prev = ug1;

        w_cur = std::move(w_next);
        v_cur = std::move(v_next);
        u_cur = std::move(u_next);
        wg_cur = std::move(wg_next);
        wtg_cur = std::move(wtg_next);
        if (i % stride == 0 || i == steps) record(i);
    }
    return out;
}

}  // namespace sdwave
