#pragma once

#include <functional>
#include <span>

namespace conecal::numerics {

/// Composite quadrature of uniformly spaced samples: Simpson when the number
/// of intervals is even (O(step^4)), trapezoid otherwise (O(step^2)).
/// Requires at least two samples.
double integrate_samples(std::span<const double> values, double step);

/// Adaptive Simpson on [a, b] to the given absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

}  // namespace conecal::numerics
