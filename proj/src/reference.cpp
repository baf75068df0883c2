#include "sdwave/reference.hpp"

#include <cmath>
#include <numbers>

#include "sdwave/transform.hpp"

namespace sdwave::reference {

namespace {
// phi_k(x_j) factored per axis: sin(k * x_j) times the orthonormal weight.
std::vector<double> sine_table(int n, int m) {
    std::vector<double> s(static_cast<std::size_t>(n) * m);
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= m; ++j)
            s[static_cast<std::size_t>(k - 1) * m + (j - 1)] =
                std::sin(k * j * std::numbers::pi / (m + 1));
    return s;
}
}  // namespace

GridField to_grid(const SpectralField& f) {
    const BasisSpec& b = f.basis;
    int d = b.dimension, n = b.modes_per_dim, m = b.grid_per_dim();
    auto tab = sine_table(n, m);
    double nu = std::sqrt(2.0 / std::numbers::pi);

    GridField out(b);
    for (std::size_t gi = 0; gi < out.values.size(); ++gi) {
        // decompose grid index
        int gj[3] = {0, 0, 0};
        std::size_t r = gi;
        for (int i = d - 1; i >= 0; --i) {
            gj[i] = static_cast<int>(r % static_cast<std::size_t>(m));
            r /= static_cast<std::size_t>(m);
        }
        double acc = 0.0;
        for (std::size_t ki = 0; ki < f.coeffs.size(); ++ki) {
            MultiIndex k = unflatten(b, ki);
            double p = f.coeffs[ki];
            for (int i = 0; i < d; ++i) {
                p *= nu * tab[static_cast<std::size_t>(k.k[i] - 1) * m + gj[i]];
            }
            acc += p;
        }
        out.values[gi] = acc;
    }
    return out;
}

SpectralField to_coeffs(const GridField& g) {
    const BasisSpec& b = g.basis;
    int d = b.dimension, n = b.modes_per_dim, m = b.grid_per_dim();
    auto tab = sine_table(n, m);
    double nu = std::sqrt(2.0 / std::numbers::pi);
    // discrete sine orthogonality: sum_j sin(a x_j) sin(b x_j) = (m+1)/2 delta_ab
    double w = 2.0 / (m + 1);

    SpectralField out(b);
    for (std::size_t ki = 0; ki < out.coeffs.size(); ++ki) {
        MultiIndex k = unflatten(b, ki);
        double acc = 0.0;
        for (std::size_t gi = 0; gi < g.values.size(); ++gi) {
            int gj[3] = {0, 0, 0};
            std::size_t r = gi;
            for (int i = d - 1; i >= 0; --i) {
                gj[i] = static_cast<int>(r % static_cast<std::size_t>(m));
                r /= static_cast<std::size_t>(m);
            }
            double p = g.values[gi];
            for (int i = 0; i < d; ++i)
                p *= tab[static_cast<std::size_t>(k.k[i] - 1) * m + gj[i]];
            acc += p;
        }
        double s = 1.0;
        for (int i = 0; i < d; ++i) s *= w / nu;
        out.coeffs[ki] = acc * s;
    }
    return out;
}

}  // namespace sdwave::reference
