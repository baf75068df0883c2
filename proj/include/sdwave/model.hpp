#ifndef SDWAVE_MODEL_HPP
#define SDWAVE_MODEL_HPP

#include <functional>
#include <string>
#include <vector>

#include "sdwave/field.hpp"

namespace sdwave {

using ScalarFn = std::function<double(double)>;

/// Source nonlinearity f with closed-form antiderivative F and derivative f'.
/// Families: "cubic" f(s)=s^3-a*s, "quintic" f(s)=s^5-a*s,
/// "odd-poly" f(s)=sum c_i s^{2i+1} (coeffs = [c0, c1, ...]).
struct SourceSpec {
    std::string family = "cubic";
    double a = 0.0;                   // linear softening for cubic/quintic
    std::vector<double> odd_coeffs;   // odd-poly coefficients

    static SourceSpec cubic(double a = 0.0);
    static SourceSpec quintic(double a = 0.0);
    static SourceSpec odd_poly(std::vector<double> coeffs);

    double f(double s) const;
    double F(double s) const;   // antiderivative, F(0) = 0
    double fprime(double s) const;
    int degree() const;
};

/// Damping coefficient sigma >= 0 with antiderivatives Sigma and SigmaHat.
/// Families: "quartic" sigma(s)=b*s^4, "constant" sigma(s)=b,
/// "even-poly" sigma(s)=sum c_i s^{2i}.
struct DampingSpec {
    std::string family = "quartic";
    double b = 0.0;
    std::vector<double> even_coeffs;

    static DampingSpec quartic(double b = 1.0);
    static DampingSpec constant(double b);
    static DampingSpec even_poly(std::vector<double> coeffs);

    double sigma(double s) const;
    double Sigma(double s) const;      // int_0^s sigma
    double SigmaHat(double s) const;   // int_0^s u*sigma(u) du
    int degree() const;
};

struct ModelSpec {
    BasisSpec basis;
    SourceSpec source;
    DampingSpec damping;
    SpectralField forcing;  // g

    ModelSpec() = default;
    ModelSpec(const BasisSpec& b, SourceSpec src, DampingSpec damp)
        : basis(b), source(std::move(src)), damping(std::move(damp)), forcing(b) {}
};

/// Dealiased projection of the pointwise composition phi(f).
SpectralField nemytskii(const ScalarFn& phi, const SpectralField& f);

/// Clamp of f outside [-k, k] (continuous, agrees with f on [-k, k]).
ScalarFn truncate_source(const SourceSpec& spec, int k);
ScalarFn truncate_damping(const DampingSpec& spec, int k);
ScalarFn truncate_source_derivative(const SourceSpec& spec, int k);

/// Soft threshold sign(w)*max(|w|-m, 0), applied on grid values.
GridField cutoff_grid(const GridField& w, double m);
/// Same, applied on the oversampled grid then re-projected.
SpectralField cutoff(const SpectralField& w, double m);

/// Quadrature of anti(w(x)) over the box.
double functional_integral(const ScalarFn& anti, const SpectralField& w);

struct ValidationReport {
    bool pass = true;
    double lipschitz_c = 0.0;       // smallest admissible growth constant for f
    double sigma_growth_c = 0.0;    // constant in |sigma| <= c(1+s^4)
    double liminf_margin = 0.0;     // min of f(s)/s + lambda_1 over the tail window
    double sample_min = -10.0, sample_max = 10.0;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;  // e.g. aliasing: q < (p+1)/2
};

/// Checks the growth/sign hypotheses on a sampled window plus the
/// polynomial degrees of the built-in families.
ValidationReport validate_conditions(const ModelSpec& model, int sample_count);

}  // namespace sdwave

#endif
