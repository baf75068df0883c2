#ifndef SDWAVE_TRANSFORM_HPP
#define SDWAVE_TRANSFORM_HPP

#include "sdwave/field.hpp"

namespace sdwave {

/// Thread-count control for the OpenMP kernels. threads == 1 runs the
/// parallel code paths serially; results are bitwise identical either way
/// because every parallel loop writes disjoint output and all reductions
/// stay serial.
namespace par {
void set_threads(int n);
int threads();
}  // namespace par

/// Synthesis: orthonormal coefficients -> values on the oversampled grid.
/// Fast type-I sine transform per axis (FFTW RODFT00).
GridField to_grid(const SpectralField& f);

/// Analysis: grid values -> orthonormal coefficients (dealiased projection,
/// modes above N per axis are discarded). Exact inverse of to_grid for
/// fields resolved by the basis.
SpectralField to_coeffs(const GridField& g);

/// Collocation nodes along one axis, x_j = j*pi/(M+1), j = 1..M.
std::vector<double> grid_nodes(const BasisSpec& basis);

}  // namespace sdwave

#endif
