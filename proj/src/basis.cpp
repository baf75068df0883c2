#include "sdwave/basis.hpp"

#include <cmath>

namespace sdwave {

BasisSpec::BasisSpec(int d, int n, double q)
    : dimension(d), modes_per_dim(n), oversampling(q) {
    if (d < 1 || d > 3) throw std::invalid_argument("BasisSpec: dimension must be 1, 2 or 3");
    if (n < 1) throw std::invalid_argument("BasisSpec: modes_per_dim must be >= 1");
    if (q < 1.0) throw std::invalid_argument("BasisSpec: oversampling must be >= 1");
}

int BasisSpec::grid_per_dim() const {
    int m = static_cast<int>(std::ceil(oversampling * modes_per_dim - 1e-12));
    return m < modes_per_dim ? modes_per_dim : m;
}

std::size_t BasisSpec::mode_count() const {
    std::size_t n = 1;
    for (int i = 0; i < dimension; ++i) n *= static_cast<std::size_t>(modes_per_dim);
    return n;
}

std::size_t BasisSpec::grid_count() const {
    std::size_t n = 1;
    for (int i = 0; i < dimension; ++i) n *= static_cast<std::size_t>(grid_per_dim());
    return n;
}

MultiIndex::MultiIndex(std::initializer_list<int> comps) {
    if (comps.size() < 1 || comps.size() > 3)
        throw std::invalid_argument("MultiIndex: 1 to 3 components");
    dim = static_cast<int>(comps.size());
    int i = 0;
    for (int c : comps) {
        if (c < 1) throw std::invalid_argument("MultiIndex: components must be >= 1");
        k[i++] = c;
    }
}

double eigenvalue(const MultiIndex& idx) {
    double s = 0.0;
    for (int i = 0; i < idx.dim; ++i) s += static_cast<double>(idx.k[i]) * idx.k[i];
    return s;
}

double first_eigenvalue(const BasisSpec& basis) {
    return static_cast<double>(basis.dimension);
}

std::size_t flat_index(const BasisSpec& basis, const MultiIndex& idx) {
    if (idx.dim != basis.dimension)
        throw std::invalid_argument("flat_index: dimension mismatch");
    std::size_t n = static_cast<std::size_t>(basis.modes_per_dim);
    std::size_t f = 0;
    for (int i = 0; i < idx.dim; ++i) {
        if (idx.k[i] < 1 || idx.k[i] > basis.modes_per_dim)
            throw std::out_of_range("flat_index: component out of range");
        f = f * n + static_cast<std::size_t>(idx.k[i] - 1);
    }
    return f;
}

MultiIndex unflatten(const BasisSpec& basis, std::size_t idx) {
    std::size_t n = static_cast<std::size_t>(basis.modes_per_dim);
    MultiIndex m;
    m.dim = basis.dimension;
    for (int i = basis.dimension - 1; i >= 0; --i) {
        m.k[i] = static_cast<int>(idx % n) + 1;
        idx /= n;
    }
    return m;
}

std::vector<double> eigenvalue_table(const BasisSpec& basis) {
    std::vector<double> lam(basis.mode_count());
    for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = eigenvalue(unflatten(basis, i));
    return lam;
}

}  // namespace sdwave
