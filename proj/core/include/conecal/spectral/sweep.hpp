#pragma once

#include <span>
#include <string>
#include <vector>

#include "conecal/spectral/radial.hpp"

namespace conecal::spectral {

struct SweepRow {
    double K = 0.0;
    double delta1_closed = 0.0;
    double delta1_fd = 0.0;     // finite-difference eigenvalue
    double mu1 = 0.0;           // -6 + delta1_fd
    bool stable = false;        // mu1 above the stability margin
    double discrepancy = 0.0;   // |delta1_fd - delta1_closed|
    double residual = 0.0;
    bool solver_ok = true;
    std::string error;
};

struct SweepReport {
    std::vector<SweepRow> rows;          // sorted by K
    double Z = 0.0;
    double step = 0.0;
    double stability_margin = 0.0;
    double max_discrepancy_subcritical = 0.0;  // over rows with K < 6
};

/// Per-K closed-form and finite-difference values of delta1 and mu1 with
/// stability flags.  Solver failures are recorded per row, not fatal.
SweepReport stability_sweep(std::span<const double> K_values,
                            const RadialProblem& problem_template,
                            double stability_margin = 1e-4);

/// Bisection on the sign of the finite-difference mu1(K) over [lo, hi].
double stability_threshold_fd(const RadialProblem& problem_template, double lo = 1.0,
                              double hi = 6.0, double width = 5e-3);

/// Root of the closed-form mu1 in (1, 6) — exactly 5 — cross-validated
/// against the finite-difference bisection (Z = 100, step = 0.01).  Throws
/// ConsistencyError if the two estimates differ by more than 0.05.
double stability_threshold();

}  // namespace conecal::spectral
