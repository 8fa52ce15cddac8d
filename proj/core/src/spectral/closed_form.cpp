#include "conecal/spectral/closed_form.hpp"

#include <cmath>

#include "conecal/errors.hpp"

namespace conecal::spectral {

double delta1_closed(double K) {
    if (!std::isfinite(K)) throw InvalidInputError("K must be finite");
    if (K >= 6.0) return 25.0 / 4.0;
    const double gap = 6.0 - K;
    return 25.0 / 4.0 - gap * gap / 4.0;
}

double mu1_closed(double K) { return -6.0 + delta1_closed(K); }

double angular_eigenvalue(const AngularMode& mode) {
    if (mode.k < 0 || mode.l < 0)
        throw InvalidInputError("angular mode degrees must be nonnegative");
    // Each S^3 factor has radius 1/sqrt(2), so its Laplacian spectrum is
    // 2 k (k+2); the -6 shift is the squared second fundamental form times t^2.
    const double lk = static_cast<double>(mode.k) * (mode.k + 2);
    const double ll = static_cast<double>(mode.l) * (mode.l + 2);
    return 2.0 * (lk + ll) - 6.0;
}

}  // namespace conecal::spectral
