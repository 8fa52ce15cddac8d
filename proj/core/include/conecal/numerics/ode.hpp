#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace conecal::numerics {

/// One node of an ODE trajectory.
struct OdeState {
    double x = 0.0;               // independent variable
    std::vector<double> y;        // state vector
    double step = 0.0;            // step size that produced this node

    void validate() const;        // throws InvalidInputError on non-finite entries
};

using OdeField = std::function<void(double x, std::span<const double> y, std::span<double> dy)>;
using OdeStop = std::function<bool(const OdeState&)>;

struct OdeOptions {
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 1'000'000;
    double initial_step = 0.0;    // 0 = choose automatically
};

/// Adaptive embedded Runge-Kutta pair (Dormand-Prince 5(4)).
///
/// Integrates until the stop predicate becomes true; the last step is
/// bisected so the final state sits at the predicate boundary within the
/// local tolerance.  Local error per step is kept at or below tol in the
/// mixed absolute/relative sense err <= tol * (1 + |y|).
///
/// Throws SingularityError (with the last good state) on step underflow and
/// ConvergenceError if max_steps is exhausted before the stop fires.
std::vector<OdeState> integrate_ode(const OdeField& field, OdeState initial,
                                    const OdeStop& stop, double tol,
                                    const OdeOptions& options = {});

}  // namespace conecal::numerics
