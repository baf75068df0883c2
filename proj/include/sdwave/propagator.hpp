#ifndef SDWAVE_PROPAGATOR_HPP
#define SDWAVE_PROPAGATOR_HPP

#include <array>

namespace sdwave {

/// Row-major 2x2 matrix.
struct Mat2 {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    static Mat2 identity() { return {1, 0, 0, 1}; }
    double det() const { return a11 * a22 - a12 * a21; }
    /// Spectral 2-norm.
    double norm2() const;
    std::array<double, 2> apply(double x, double y) const {
        return {a11 * x + a12 * y, a21 * x + a22 * y};
    }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
};

/// Exact exp(t*G) for the per-mode generator G = [[0,1],[-lambda,-lambda]].
/// Characteristic roots mu = (-lambda +- sqrt(lambda^2-4lambda))/2; three
/// analytic branches (oscillatory, double root near lambda=4, overdamped),
/// continuous across the switches.
struct ModePropagator {
    double lambda = 0;
    double t = 0;
    Mat2 mat;
};

ModePropagator mode_propagator(double lambda, double t);

/// exp(hG), h*phi1(hG) and h*phi2(hG) for one mode; the ETD2 step tableau.
struct EtdCoeffs {
    Mat2 exp_h;    // e^{hG}
    Mat2 phi1_h;   // h * phi1(hG)
    Mat2 phi2_h;   // h * phi2(hG)
};

EtdCoeffs etd_coeffs(double lambda, double h);

/// |Re| of the slow characteristic root; the per-mode decay rate of U.
double slow_decay_rate(double lambda);

}  // namespace sdwave

#endif
