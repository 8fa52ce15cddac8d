#pragma once

#include <functional>

namespace conecal::numerics {

/// Root bracket.  The target function must change sign on [lo, hi].
struct Bracket {
    double lo;
    double hi;
    double tolerance = 1e-12;

    void validate() const;  // throws InvalidInputError
};

/// Brent's method: derivative-free, guaranteed on a valid bracket.
/// Returns x in [lo, hi] with |x - root| below the bracket tolerance
/// (plus machine resolution at the root's magnitude).
double find_root(const std::function<double(double)>& f, const Bracket& bracket);

}  // namespace conecal::numerics
