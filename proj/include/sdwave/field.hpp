#ifndef SDWAVE_FIELD_HPP
#define SDWAVE_FIELD_HPP

#include <vector>

#include "sdwave/basis.hpp"

namespace sdwave {

/// Coefficients over the orthonormal sine eigenbasis, flat order.
struct SpectralField {
    BasisSpec basis;
    std::vector<double> coeffs;

    SpectralField() = default;
    explicit SpectralField(const BasisSpec& b) : basis(b), coeffs(b.mode_count(), 0.0) {}

    double& operator[](std::size_t i) { return coeffs[i]; }
    double operator[](std::size_t i) const { return coeffs[i]; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
    bool finite() const;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

/// Pointwise values on the interior collocation grid, flat order.
struct GridField {
    BasisSpec basis;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(const BasisSpec& b) : basis(b), values(b.grid_count(), 0.0) {}

    bool finite() const;
};

/// ( sum_k lambda_k^s c_k^2 )^{1/2}. s in [-2, 2]; s=0 is L2, s=1 the
/// H01 seminorm, s=2 the ||Laplace .|| norm, s=-1 the dual norm.
double sobolev_norm(const SpectralField& f, double s);

/// L2 inner product, sum of coefficient products.
double inner_product(const SpectralField& f, const SpectralField& g);

/// Quadrature of the pointwise product over the box (spacing^d weights).
double grid_inner_product(const GridField& f, const GridField& g);

/// Quadrature weight per grid node, (pi/(M+1))^d.
double quadrature_weight(const BasisSpec& basis);

}  // namespace sdwave

#endif
