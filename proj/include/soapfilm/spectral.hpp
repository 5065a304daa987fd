#pragma once

#include "soapfilm/surface.hpp"

namespace soapfilm {

// Smallest Dirichlet eigenvalue of the stability (Jacobi) operator
// -Laplace_N - |A_N|^2 restricted to the angular Fourier mode
// phi(s) * cos(m*theta) on the meridian chart. For a disk chart with an
// excised axis core the core node is a free even-extension node in mode 0
// and pinned for m >= 1.
double jacobi_mode_eigenvalue(const BaseSurface& base, int mode);

// Minimum over modes m = 0..max_mode; the low modes carry the bottom of the
// spectrum for the axisymmetric geometries handled here.
double jacobi_smallest_eigenvalue(const BaseSurface& base, int max_mode = 2);

}  // namespace soapfilm
