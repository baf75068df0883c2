#include "sdwave/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdwave {

namespace par {
namespace {
int g_threads = 1;
}
void set_threads(int n) { g_threads = n < 1 ? 1 : n; }
int threads() { return g_threads; }
}  // namespace par

namespace {

// One RODFT00 plan per transform length. Plan creation is not thread-safe;
// execution via the new-array interface is.
struct PlanCache {
    std::mutex mu;
    std::map<int, fftw_plan> plans;
    std::map<int, std::vector<double>> scratch;

    fftw_plan get(int m) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = plans.find(m);
        if (it != plans.end()) return it->second;
        auto& buf = scratch[m];
        buf.assign(static_cast<std::size_t>(m), 0.0);
        fftw_plan p = fftw_plan_r2r_1d(m, buf.data(), buf.data(), FFTW_RODFT00,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans[m] = p;
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

// In-place DST-I along one axis of a row-major d-dim array with cubic shape.
// Output line y_k = 2 * sum_j x_j sin(pi (j+1)(k+1)/(m+1)).
void dst_axis(std::vector<double>& data, int dim, int m, int axis) {
    fftw_plan plan = cache().get(m);
    std::size_t stride = 1;
    for (int i = axis + 1; i < dim; ++i) stride *= static_cast<std::size_t>(m);
    std::size_t outer = data.size() / (stride * static_cast<std::size_t>(m));
    std::size_t lines = outer * stride;

#pragma omp parallel num_threads(par::threads())
    {
        std::vector<double> line(static_cast<std::size_t>(m));
#pragma omp for schedule(static)
        for (long long l = 0; l < static_cast<long long>(lines); ++l) {
            std::size_t o = static_cast<std::size_t>(l) / stride;
            std::size_t in = static_cast<std::size_t>(l) % stride;
            std::size_t base = o * stride * static_cast<std::size_t>(m) + in;
            for (int j = 0; j < m; ++j) line[static_cast<std::size_t>(j)] = data[base + j * stride];
            fftw_execute_r2r(plan, line.data(), line.data());
            for (int j = 0; j < m; ++j) data[base + j * stride] = line[static_cast<std::size_t>(j)];
        }
    }
}

}  // namespace

std::vector<double> grid_nodes(const BasisSpec& basis) {
    int m = basis.grid_per_dim();
    std::vector<double> x(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) x[static_cast<std::size_t>(j - 1)] = j * std::numbers::pi / (m + 1);
    return x;
}

GridField to_grid(const SpectralField& f) {
    const BasisSpec& b = f.basis;
    int d = b.dimension, n = b.modes_per_dim, m = b.grid_per_dim();
    // Per axis: values = sum_k (c_k * nu) sin(k x), nu = sqrt(2/pi); the DST
    // carries a factor 2, so pre-scale by (nu/2)^d.
    double scale = 1.0;
    for (int i = 0; i < d; ++i) scale *= 0.5 * std::sqrt(2.0 / std::numbers::pi);

    std::vector<double> work(b.grid_count(), 0.0);
    // embed N^d coefficients into the M^d array
    for (std::size_t idx = 0; idx < f.coeffs.size(); ++idx) {
        MultiIndex k = unflatten(b, idx);
        std::size_t g = 0;
        for (int i = 0; i < d; ++i) g = g * static_cast<std::size_t>(m) + static_cast<std::size_t>(k.k[i] - 1);
        work[g] = f.coeffs[idx] * scale;
    }
    for (int a = 0; a < d; ++a) dst_axis(work, d, m, a);

    GridField out(b);
    out.values = std::move(work);
    return out;
}

SpectralField to_coeffs(const GridField& g) {
    const BasisSpec& b = g.basis;
    int d = b.dimension, m = b.grid_per_dim();
    if (g.values.size() != b.grid_count())
        throw std::invalid_argument("to_coeffs: grid shape mismatch");
    // Analysis per axis: c_k = DST(v)_k / ((m+1) * nu).
    double scale = 1.0;
    for (int i = 0; i < d; ++i) scale *= 1.0 / ((m + 1) * std::sqrt(2.0 / std::numbers::pi));

    std::vector<double> work = g.values;
    for (int a = 0; a < d; ++a) dst_axis(work, d, m, a);

    SpectralField out(b);
    for (std::size_t idx = 0; idx < out.coeffs.size(); ++idx) {
        MultiIndex k = unflatten(b, idx);
        std::size_t gi = 0;
        for (int i = 0; i < d; ++i) gi = gi * static_cast<std::size_t>(m) + static_cast<std::size_t>(k.k[i] - 1);
        out.coeffs[idx] = work[gi] * scale;
    }
    return out;
}

}  // namespace sdwave
