#ifndef SDWAVE_BASIS_HPP
#define SDWAVE_BASIS_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sdwave {

/// Dirichlet sine eigenbasis of -Laplace on the box (0,pi)^d.
/// Basis functions phi_k(x) = (2/pi)^{d/2} prod_i sin(k_i x_i) are
/// orthonormal in L2; the eigenvalue of -Laplace is sum k_i^2.
struct BasisSpec {
    int dimension = 1;       // 1, 2 or 3
    int modes_per_dim = 1;   // N >= 1
    double oversampling = 1.5;  // q >= 1, collocation points per axis >= ceil(q*N)

    BasisSpec() = default;
    BasisSpec(int d, int n, double q = 1.5);

    int grid_per_dim() const;      // interior collocation points M per axis
    std::size_t mode_count() const;  // N^d
    std::size_t grid_count() const;  // M^d

    bool operator==(const BasisSpec&) const = default;
};

/// Mode multi-index, components in {1,...,N}.
struct MultiIndex {
    std::array<int, 3> k{1, 1, 1};
    int dim = 1;

    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> comps);
};

double eigenvalue(const MultiIndex& k);

/// lambda_1 for the box, equals d.
double first_eigenvalue(const BasisSpec& basis);

/// Flattened (row-major, last axis fastest) index of a multi-index.
std::size_t flat_index(const BasisSpec& basis, const MultiIndex& k);

/// Inverse of flat_index.
MultiIndex unflatten(const BasisSpec& basis, std::size_t idx);

/// Eigenvalues for all modes in flat order.
std::vector<double> eigenvalue_table(const BasisSpec& basis);

}  // namespace sdwave

#endif
