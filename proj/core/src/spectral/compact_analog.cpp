#include "conecal/spectral/compact_analog.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "conecal/errors.hpp"
#include "conecal/numerics/root_find.hpp"

namespace conecal::spectral {

double compact_analog_eigenvalue(double kappa) {
    if (!std::isfinite(kappa) || kappa == 0.0)
        throw InvalidInputError("kappa must be finite and nonzero");

    // With h = sin(s z) the boundary condition reads kappa sin s = s cos s.
    // The pole-free form f(s) = kappa sin s - s cos s has f(pi/2) = kappa and
    // f(3pi/2) = -kappa, so [pi/2, 3pi/2] brackets exactly the branch through
    // s = pi.
    auto f = [kappa](double s) { return kappa * std::sin(s) - s * std::cos(s); };
    const double lo = std::numbers::pi / 2.0;
    const double hi = 3.0 * std::numbers::pi / 2.0;
    if ((f(lo) > 0.0) == (f(hi) > 0.0))
        throw BracketError("no sign change for the compact analog: f(pi/2) = " +
                           std::to_string(f(lo)) + ", f(3pi/2) = " + std::to_string(f(hi)));
    const double s = numerics::find_root(f, numerics::Bracket{lo, hi, 1e-14});
    return s * s;
}

}  // namespace conecal::spectral
