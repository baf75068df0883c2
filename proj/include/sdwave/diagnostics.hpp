#ifndef SDWAVE_DIAGNOSTICS_HPP
#define SDWAVE_DIAGNOSTICS_HPP

#include "sdwave/dynamics.hpp"

namespace sdwave {

/// E = (||grad w||^2 + ||w_t||^2) / 2
double energy(const State& s);
/// L = E + <F(w),1> - <g,w>; strictly decreasing along non-stationary orbits.
double lyapunov(const ModelSpec& model, const State& s);

struct EnergyLedger {
    std::vector<double> times;
    std::vector<double> E;
    std::vector<double> L;
    std::vector<double> diss_grad;
    std::vector<double> diss_sigma;
    std::vector<double> residual;  // energy-equality residual over [0, t_i]
    double max_residual = 0.0;
};

/// Audits the energy equality along a trajectory: all terms at each
/// snapshot, with the residual charged to time quadrature.
EnergyLedger audit_energy_equality(const ModelSpec& model, const TrajectoryRecord& rec);

struct DecayReport {
    double fitted_rate = 0.0;       // omega-hat from the log-norm tail fit
    double analytic_rate = 0.0;     // min over modes of |Re mu_slow|
    double prefactor = 0.0;         // M-hat >= 1, tail-fit amplitude at t = 0
    std::vector<double> mode_rates;
    double max_rel_deviation = 0.0;
};

/// Evolves random unit-H1 probes under U and fits the decay rate of the
/// H1 norm over the last half of the horizon.
DecayReport measure_decay(const BasisSpec& basis, int probes, double horizon,
                          unsigned long long seed = 0);

struct SmoothingReport {
    std::vector<double> times;
    std::vector<double> amplification;  // A(t): (H2 x L2) -> H1 operator norm
    double sup_sqrt_t_A = 0.0;
};

/// Closed-form per-mode amplification of U from (H2 cap H01) x L2 into H1.
SmoothingReport measure_smoothing(const BasisSpec& basis, const std::vector<double>& times);

struct DependenceReport {
    std::vector<double> deltas;        // perturbation sizes, strictly decreasing
    std::vector<double> responses;     // r_j = ||dw||_{H1}^2 + ||dw_t||_{H-1}^2 at T
    std::vector<double> ratios;        // r_j / delta_j
    std::vector<double> lip_ratios;    // sqrt(r_j) / delta_j
};

/// Perturbation ladder realizing the continuous-dependence bound; the
/// direction is normalized in H1 x H-1.
DependenceReport continuous_dependence(const ModelSpec& model, const State& s0,
                                       const State& direction, double T, int ladder,
                                       double delta0 = 1e-2, double dt = 1e-3);

struct NemytskiiCheck {
    bool pass = false;
    std::vector<double> distances;  // || phi(v_n) - phi(v) ||_{L_{6/r}} per step
};

/// Discrete composition-continuity check: v_n -> v in grid L6 forces
/// phi(v_n) -> phi(v) in L_{6/r}.
NemytskiiCheck nemytskii_continuity_check(const ScalarFn& phi, int growth_degree,
                                          const SpectralField& v, int steps,
                                          unsigned long long seed = 0);

/// Grid Lp norm by equal-weight quadrature.
double grid_lp_norm(const GridField& g, double p);

struct BoundTracker {
    double mu = 0.1;
    std::vector<double> times;
    std::vector<double> h1_norms;
    std::vector<double> phi;  // Phi(t) = ||grad w_t||^2/2 + (1+mu)||Lap w||^2/2
                              //          + mu<grad w_t, grad w> + <g, Lap w>
    double running_sup = 0.0;
};

/// Tracks the uniform H1 bound functional along a trajectory.
BoundTracker track_h1_bound(const ModelSpec& model, const TrajectoryRecord& rec,
                            double mu = 0.1);

}  // namespace sdwave

#endif
