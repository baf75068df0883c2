#ifndef SDWAVE_DYNAMICS_HPP
#define SDWAVE_DYNAMICS_HPP

#include <optional>
#include <stdexcept>

#include "sdwave/model.hpp"
#include "sdwave/propagator.hpp"

namespace sdwave {

/// (position, velocity) pair; element of H = H01 x L2.
struct State {
    SpectralField w;
    SpectralField v;

    State() = default;
    explicit State(const BasisSpec& b) : w(b), v(b) {}
    State(SpectralField w_, SpectralField v_);

    bool finite() const { return w.finite() && v.finite(); }
};

/// || (w,v) ||_H = (||w||_{H1}^2 + ||v||_{L2}^2)^{1/2}
double h_norm(const State& s);
/// || (w,v) ||_{H1} = (||w||_{H2}^2 + ||v||_{H1}^2)^{1/2}
double h1_norm(const State& s);

struct SolverConfig {
    double dt = 1e-3;
    double horizon = 1.0;
    std::string scheme = "etd2";  // or "etd1"
    int snapshot_stride = 1;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> diss_grad;   // cumulative int ||grad w_t||^2
    std::vector<double> diss_sigma;  // cumulative int <sigma(w) w_t, w_t>
};

struct BlowUpError : std::runtime_error {
    double time;
    explicit BlowUpError(double t)
        : std::runtime_error("solution blew up at t = " + std::to_string(t)), time(t) {}
};

/// Linear semigroup of u_tt - Lap u_t - Lap u = 0, applied mode-wise.
State apply_U(const State& s, double t);

/// Dealiased spectral projection of g - f(w) - sigma(w) v.
SpectralField nonlinear_forcing(const ModelSpec& model, const State& s);

/// Exponential integrator with cached per-mode tableau for a fixed dt.
class Integrator {
  public:
    Integrator(const ModelSpec& model, double dt, std::string scheme = "etd2");

    /// One step; throws BlowUpError (with the step's start time) on
    /// non-finite results.
    State step(const State& s, double t_now = 0.0) const;

    /// Step of a forced linear system v' = Gv + (0, n(t)); the forcing
    /// callback returns the projected scalar forcing at a given time and
    /// state (used by the splitting subsystems).
    State step_forced(const State& s,
                      const std::function<SpectralField(const State&, bool)>& forcing,
                      double t_now = 0.0) const;

    double dt() const { return dt_; }
    const ModelSpec& model() const { return model_; }

  private:
    ModelSpec model_;
    double dt_;
    bool second_order_;
    std::vector<double> lambda_;
    std::vector<EtdCoeffs> tab_;
};

/// Crude explicit-stability probe: suggested dt bound from the nonlinear
/// stiffness at the initial state.
double stability_dt_hint(const ModelSpec& model, const State& s0);

TrajectoryRecord simulate(const ModelSpec& model, const State& s0, const SolverConfig& cfg);

/// Duhamel operator C(t)s0 = int_0^t U(t-s)(0, Phi(s)) ds along the
/// trajectory of s0, trapezoid quadrature at resolution dt.
State duhamel_C(const ModelSpec& model, const State& s0, double t, double dt);

struct SplitTrajectories {
    TrajectoryRecord background;  // w
    TrajectoryRecord vk;          // truncated system, zero data
    TrajectoryRecord uk;          // remainder system, full data
};

/// Co-integrates the background and the two split subsystems; v_k + u_k
/// reconstructs w to second order in dt.
SplitTrajectories integrate_split(const ModelSpec& model, int k, const State& s_start,
                                  const SolverConfig& cfg);

}  // namespace sdwave

#endif
