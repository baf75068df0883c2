#include "sdwave/propagator.hpp"

#include <cmath>
#include <complex>

namespace sdwave {

double Mat2::norm2() const {
    double p = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
    double d = det();
    double disc = p * p - 4.0 * d * d;
    if (disc < 0.0) disc = 0.0;
    return std::sqrt(0.5 * (p + std::sqrt(disc)));
}

namespace {

using cd = std::complex<double>;

// phi_k(z) = (e^z - sum_{j<k} z^j/j!) / z^k; phi_0 = exp. Series fallback
// near zero avoids catastrophic cancellation.
cd phi(cd z, int k) {
    if (std::abs(z) < 0.5) {
        cd term = 1.0, acc = 0.0;
        double fact = 1.0;
        for (int j = 1; j <= k; ++j) fact *= j;
        term = 1.0 / fact;
        acc = term;
        for (int n = 1; n < 30; ++n) {
            term *= z / static_cast<double>(n + k);
            acc += term;
            if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        }
        return acc;
    }
    cd e = std::exp(z);
    if (k == 0) return e;
    if (k == 1) return (e - 1.0) / z;
    return (e - 1.0 - z) / (z * z);
}

// d/dz phi_k(z)
cd phi_deriv(cd z, int k) {
    if (std::abs(z) < 0.5) {
        // sum_{n>=1} n z^{n-1} / (n+k)!
        cd acc = 0.0, zp = 1.0;
        double fact = 1.0;
        for (int j = 1; j <= k + 1; ++j) fact *= j;
        for (int n = 1; n < 30; ++n) {
            acc += static_cast<double>(n) * zp / fact;
            zp *= z;
            fact *= (n + k + 1);
            if (n > 3 && std::abs(zp / fact) < 1e-20) break;
        }
        return acc;
    }
    cd e = std::exp(z);
    if (k == 0) return e;
    if (k == 1) return (e * (z - 1.0) + 1.0) / (z * z);
    return (e * (z - 2.0) + z + 2.0) / (z * z * z);
}

// f(G) for G = [[0,1],[-lam,-lam]] via the two-point (or confluent)
// interpolation on the spectrum. fn(mu) must be analytic.
template <typename Fn, typename Dfn>
Mat2 matrix_function(double lam, Fn fn, Dfn dfn) {
    const cd g11 = 0.0, g12 = 1.0, g21 = -lam, g22 = -lam;
    double disc = lam * lam - 4.0 * lam;
    cd r11, r12, r21, r22;
    if (std::abs(lam - 4.0) < 1e-6) {
        // double root branch: f(G) = f(mu) I + f'(mu) (G - mu I)
        cd mu = -0.5 * lam;
        cd fv = fn(mu), fd = dfn(mu);
        r11 = fv + fd * (g11 - mu);
        r12 = fd * g12;
        r21 = fd * g21;
        r22 = fv + fd * (g22 - mu);
    } else {
        cd root = std::sqrt(cd(disc, 0.0));
        cd mu1 = 0.5 * (-lam + root), mu2 = 0.5 * (-lam - root);
        cd f1 = fn(mu1), f2 = fn(mu2);
        cd den = mu1 - mu2;
        // f(G) = (f1 (G - mu2 I) - f2 (G - mu1 I)) / (mu1 - mu2)
        r11 = (f1 * (g11 - mu2) - f2 * (g11 - mu1)) / den;
        r12 = (f1 - f2) * g12 / den;
        r21 = (f1 - f2) * g21 / den;
        r22 = (f1 * (g22 - mu2) - f2 * (g22 - mu1)) / den;
    }
    return {r11.real(), r12.real(), r21.real(), r22.real()};
}

}  // namespace

ModePropagator mode_propagator(double lambda, double t) {
    if (lambda <= 0.0) throw std::invalid_argument("mode_propagator: lambda > 0");
    if (t < 0.0) throw std::invalid_argument("mode_propagator: t >= 0");
    ModePropagator p;
    p.lambda = lambda;
    p.t = t;
    p.mat = matrix_function(
        lambda, [t](cd mu) { return phi(t * mu, 0); },
        [t](cd mu) { return t * phi_deriv(t * mu, 0); });
    return p;
}

EtdCoeffs etd_coeffs(double lambda, double h) {
    EtdCoeffs c;
    c.exp_h = matrix_function(
        lambda, [h](cd mu) { return phi(h * mu, 0); },
        [h](cd mu) { return h * phi_deriv(h * mu, 0); });
    c.phi1_h = matrix_function(
        lambda, [h](cd mu) { return h * phi(h * mu, 1); },
        [h](cd mu) { return h * h * phi_deriv(h * mu, 1); });
    c.phi2_h = matrix_function(
        lambda, [h](cd mu) { return h * phi(h * mu, 2); },
        [h](cd mu) { return h * h * phi_deriv(h * mu, 2); });
    return c;
}

double slow_decay_rate(double lambda) {
    if (lambda <= 4.0) return 0.5 * lambda;
    return 0.5 * (lambda - std::sqrt(lambda * lambda - 4.0 * lambda));
}

}  // namespace sdwave
