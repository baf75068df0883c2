#include "sdwave/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdwave {

namespace {
void check_same_basis(const BasisSpec& a, const BasisSpec& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": basis mismatch");
}
}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    check_same_basis(basis, o.basis, "SpectralField::+=");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    check_same_basis(basis, o.basis, "SpectralField::-=");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (double& c : coeffs) c *= a;
    return *this;
}

bool SpectralField::finite() const {
    for (double c : coeffs)
        if (!std::isfinite(c)) return false;
    return true;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

bool GridField::finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

double sobolev_norm(const SpectralField& f, double s) {
    if (s < -2.0 || s > 2.0) throw std::invalid_argument("sobolev_norm: s out of [-2,2]");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        double lam = eigenvalue(unflatten(f.basis, i));
        acc += std::pow(lam, s) * f.coeffs[i] * f.coeffs[i];
    }
    return std::sqrt(acc);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    check_same_basis(f.basis, g.basis, "inner_product");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) acc += f.coeffs[i] * g.coeffs[i];
    return acc;
}

double quadrature_weight(const BasisSpec& basis) {
    double h = std::numbers::pi / (basis.grid_per_dim() + 1);
    double w = 1.0;
    for (int i = 0; i < basis.dimension; ++i) w *= h;
    return w;
}

double grid_inner_product(const GridField& f, const GridField& g) {
    check_same_basis(f.basis, g.basis, "grid_inner_product");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * g.values[i];
    return acc * quadrature_weight(f.basis);
}

}  // namespace sdwave
