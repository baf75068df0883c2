#ifndef SDWAVE_REFERENCE_HPP
#define SDWAVE_REFERENCE_HPP

#include "sdwave/field.hpp"

namespace sdwave::reference {

/// Serial dense-matrix synthesis, O(M^d * N^d). Test oracle for the fast
/// sine-transform path; also the baseline in the kernel benchmark.
GridField to_grid(const SpectralField& f);

/// Serial dense-matrix analysis (sine quadrature per mode).
SpectralField to_coeffs(const GridField& g);

}  // namespace sdwave::reference

#endif
