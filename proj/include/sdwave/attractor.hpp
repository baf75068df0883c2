#ifndef SDWAVE_ATTRACTOR_HPP
#define SDWAVE_ATTRACTOR_HPP

#include "sdwave/diagnostics.hpp"

namespace sdwave {

struct Equilibrium {
    SpectralField w;
    double residual = 0.0;       // ||-Lap w + P f(w) - g||_{L2}
    double lyapunov_value = 0.0; // L(w, 0)
    int stability_index = 0;     // negative eigenvalues of -Lap + f'(w)
    std::vector<double> smallest_eigenvalues;
};

struct EquilibriumSet {
    std::vector<Equilibrium> items;  // sorted by Lyapunov value, then coeffs
    int dropped_starts = 0;
};

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 50;
    int index_eigenvalues = 20;  // how many smallest eigenvalues to report
};

/// Damped Newton on G(w) = -Lap w + P_N f(w) - g in coefficient space.
/// Throws on non-convergence or a singular Jacobian.
Equilibrium newton_equilibrium(const ModelSpec& model, const SpectralField& guess,
                               const NewtonOptions& opt = {});

/// Multi-start search: zero, +-scaled first mode, and random spectral
/// guesses; deduplicated at 1e-6 in H1.
EquilibriumSet find_equilibria(const ModelSpec& model, int starts,
                               unsigned long long seed, const NewtonOptions& opt = {});

struct OmegaLimitReport {
    bool converged = false;           // velocity dropped below the threshold
    double terminal_velocity_norm = 0.0;
    double terminal_time = 0.0;
    int matched = -1;                 // index into the equilibrium set, or -1
    double match_distance_h1 = 0.0;
    double lyapunov_plateau = 0.0;
};

/// Runs until ||w_t||_{L2} < threshold or the horizon; matches the terminal
/// position against the equilibrium set in H1.
OmegaLimitReport omega_limit(const ModelSpec& model, const State& s0, const SolverConfig& cfg,
                             const EquilibriumSet& eqs, double velocity_threshold = 1e-8,
                             double match_radius = 1e-3);

struct BasinTally {
    std::vector<int> hits;  // per equilibrium
    int inconclusive = 0;
};

BasinTally basin_sample(const ModelSpec& model, int ensemble, double radius,
                        unsigned long long seed, const SolverConfig& cfg,
                        const EquilibriumSet& eqs, double velocity_threshold = 1e-8,
                        double match_radius = 1e-3);

struct SplittingReport {
    int k = 0;
    double horizon = 0.0;
    double burn_in = 0.0;
    double sup_vk_h2h1 = 0.0;        // sup_t ||v_k||_{H2} + ||v_kt||_{H1}
    std::vector<double> uk_energy;   // E(u_k) time series at snapshots
    std::vector<double> times;
    double uk_decay_rate = 0.0;      // fitted exponential rate of E(u_k)
    double reconstruction_error = 0.0;  // max_t ||v_k + u_k - w||_{H1}
};

/// Runs the regularity splitting for each k; s0 should be pre-relaxed (a
/// forward burn-in stands in for a trajectory on the attractor).
std::vector<SplittingReport> splitting_experiment(const ModelSpec& model,
                                                  const std::vector<int>& k_list,
                                                  const State& s0, const SolverConfig& cfg,
                                                  double burn_in_documented = 0.0);

}  // namespace sdwave

#endif
