#pragma once

namespace conecal::spectral {

/// Eigenvalue branch of -d^2/dz^2 on [0, 1] with h(0) = 0 and
/// kappa h(1) = h'(1) that continues the Dirichlet value pi^2: the root of
/// tan(sqrt(delta)) = sqrt(delta)/kappa with sqrt(delta) in (pi/2, 3pi/2).
/// Behaves like pi^2 (1 + 2/kappa + O(kappa^{-2})) for large |kappa|.
double compact_analog_eigenvalue(double kappa);

}  // namespace conecal::spectral
