#include "conecal/numerics/root_find.hpp"

#include <cmath>
#include <limits>

#include "conecal/errors.hpp"

namespace conecal::numerics {

void Bracket::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw InvalidInputError("bracket endpoints must be finite");
    if (!(lo < hi))
        throw InvalidInputError("bracket requires lo < hi");
    if (!(tolerance > 0.0))
        throw InvalidInputError("bracket tolerance must be positive");
}

double find_root(const std::function<double(double)>& f, const Bracket& bracket) {
    bracket.validate();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iter = 200;

    double a = bracket.lo, b = bracket.hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw BracketError("no sign change on the bracket");

    double c = a, fc = fa;
    double d = b - a, e = d;

    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * bracket.tolerance;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation, or secant when a == c.
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double r = fb / fc;
                const double t = fa / fc;
                p = s * (2.0 * xm * t * (t - r) - (b - a) * (r - 1.0));
                q = (t - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    throw ConvergenceError("root finder exceeded the iteration limit", std::abs(fb));
}

}  // namespace conecal::numerics
