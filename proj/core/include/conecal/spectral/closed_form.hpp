#pragma once

namespace conecal::spectral {

/// Principal radial eigenvalue of the stability operator:
/// 25/4 - (6-K)^2/4 for K < 6, saturating at 25/4 for K >= 6.
double delta1_closed(double K);

/// Principal eigenvalue of the full stability operator:
/// mu1 = -6 + delta1; positive exactly for K > 5.
double mu1_closed(double K);

/// Spherical-harmonic degree pair on the two S^3 factors of the cross-section.
struct AngularMode {
    int k = 0;
    int l = 0;
};

/// Eigenvalue of the angular operator -Laplace(cross-section) - 6 on the
/// product of two 3-spheres of radius 1/sqrt(2):
/// 2 (k(k+2) + l(l+2)) - 6.  The constant mode gives -6.
double angular_eigenvalue(const AngularMode& mode);

}  // namespace conecal::spectral
