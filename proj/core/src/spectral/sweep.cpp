#include "conecal/spectral/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "conecal/errors.hpp"
#include "conecal/numerics/root_find.hpp"

namespace conecal::spectral {

SweepReport stability_sweep(std::span<const double> K_values,
                            const RadialProblem& problem_template,
                            double stability_margin) {
    for (double k : K_values)
        if (!std::isfinite(k)) throw InvalidInputError("sweep K values must be finite");

    std::vector<double> ks(K_values.begin(), K_values.end());
    std::sort(ks.begin(), ks.end());

    SweepReport report;
    report.Z = problem_template.Z;
    report.step = problem_template.step;
    report.stability_margin = stability_margin;

    for (double k : ks) {
        SweepRow row;
        row.K = k;
        row.delta1_closed = delta1_closed(k);
        try {
            RadialProblem p = problem_template;
            p.K = k;
            const EigenResult r = radial_eigensolve_z(p);
            row.delta1_fd = r.eigenvalue;
            row.residual = r.residual;
            row.mu1 = -6.0 + r.eigenvalue;
            row.stable = row.mu1 > stability_margin;
            row.discrepancy = std::abs(row.delta1_fd - row.delta1_closed);
            if (k < 6.0)
                report.max_discrepancy_subcritical =
                    std::max(report.max_discrepancy_subcritical, row.discrepancy);
        } catch (const Error& e) {
            row.solver_ok = false;
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

double stability_threshold_fd(const RadialProblem& problem_template, double lo,
                              double hi, double width) {
    auto mu_fd = [&](double k) {
        RadialProblem p = problem_template;
        p.K = k;
        return -6.0 + radial_eigensolve_z(p).eigenvalue;
    };
    double flo = mu_fd(lo), fhi = mu_fd(hi);
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketError("finite-difference mu1 does not change sign on the interval");
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = mu_fd(mid);
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double stability_threshold() {
    const double closed = numerics::find_root(
        [](double k) { return mu1_closed(k); }, numerics::Bracket{1.0, 6.0, 1e-13});

    RadialProblem validation;
    validation.Z = 100.0;
    validation.step = 0.01;
    const double fd = stability_threshold_fd(validation);
    if (std::abs(fd - closed) > 0.05)
        throw ConsistencyError("finite-difference threshold " + std::to_string(fd) +
                               " disagrees with the closed-form root " +
                               std::to_string(closed));
    return closed;
}

}  // namespace conecal::spectral
