#pragma once

#include <vector>

namespace conecal::spectral {

/// First n_modes eigenvalues of the zonal Laplace-Beltrami operator
/// -f'' - 2 cot(psi) f' on the unit 3-sphere, psi in [0, pi], by a
/// sin^2-weighted finite-volume discretization with `grid` cells.
/// Converges to k (k+2), k = 0, 1, ...; requires grid >= 200.
std::vector<double> zonal_sphere_spectrum(int n_modes, int grid);

}  // namespace conecal::spectral
