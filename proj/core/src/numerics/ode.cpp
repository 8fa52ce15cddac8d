#include "conecal/numerics/ode.hpp"

#include <algorithm>
#include <cmath>

#include "conecal/errors.hpp"

namespace conecal::numerics {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double d1 = b1 - 5179.0 / 57600, d3 = b3 - 7571.0 / 16695,
                 d4 = b4 - 393.0 / 640, d5 = b5 + 92097.0 / 339200,
                 d6 = b6 - 187.0 / 2100, d7 = -1.0 / 40;

struct Stepper {
    const OdeField& field;
    std::size_t n;
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, tmp;

    Stepper(const OdeField& f, std::size_t dim)
        : field(f), n(dim), k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
          k7(dim), tmp(dim) {}

    // One trial step from (x, y) with size h; writes the 5th-order result to
    // out and returns the scaled error norm (<= 1 means acceptable).
    double trial(double x, const std::vector<double>& y, double h,
                 std::vector<double>& out, double tol) {
        field(x, y, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        field(x + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        field(x + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        field(x + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        field(x + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                 a65 * k5[i]);
        field(x + h, tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                 b6 * k6[i]);
        field(x + h, out, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                  d6 * k6[i] + d7 * k7[i]);
            const double scale = tol * (1.0 + std::abs(y[i]));
            err = std::max(err, std::abs(e) / scale);
        }
        return err;
    }
};

}  // namespace

void OdeState::validate() const {
    if (!std::isfinite(x)) throw InvalidInputError("ODE state has non-finite x");
    for (double v : y)
        if (!std::isfinite(v)) throw InvalidInputError("ODE state has non-finite entry");
}

std::vector<OdeState> integrate_ode(const OdeField& field, OdeState initial,
                                    const OdeStop& stop, double tol,
                                    const OdeOptions& options) {
    initial.validate();
    if (!(tol > 0.0)) throw InvalidInputError("ODE tolerance must be positive");
    const std::size_t n = initial.y.size();
    Stepper stepper(field, n);

    std::vector<OdeState> path;
    path.push_back(initial);
    if (stop(path.back())) return path;

    double h = options.initial_step;
    if (h <= 0.0) {
        std::vector<double> dy(n);
        field(initial.x, initial.y, dy);
        double dmax = 0.0, ymax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dmax = std::max(dmax, std::abs(dy[i]));
            ymax = std::max(ymax, std::abs(initial.y[i]));
        }
        h = 0.01 * (1.0 + ymax) / (1.0 + dmax);
    }
    h = std::min(h, options.max_step);

    std::vector<double> ynew(n);
    for (std::size_t step_count = 0; step_count < options.max_steps; ++step_count) {
        const OdeState& cur = path.back();
        const double hmin = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(cur.x));
        if (h < hmin)
            throw SingularityError("ODE step size underflow", cur.x, cur.y);

        const double err = stepper.trial(cur.x, cur.y, h, ynew, tol);
        if (err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        OdeState next;
        next.x = cur.x + h;
        next.y = ynew;
        next.step = h;

        const double h_accepted = h;
        h = std::min(options.max_step,
                     h * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-16), -0.2))));

        if (stop(next)) {
            // Locate the predicate boundary inside the accepted step.
            double lo = 0.0, hi = h_accepted;
            OdeState at_hi = next;
            const double xres = std::max(tol * (1.0 + std::abs(next.x)), hmin);
            while (hi - lo > xres) {
                const double mid = 0.5 * (lo + hi);
                stepper.trial(cur.x, cur.y, mid, ynew, tol);
                OdeState probe{cur.x + mid, ynew, mid};
                if (stop(probe)) {
                    hi = mid;
                    at_hi = std::move(probe);
                } else {
                    lo = mid;
                }
            }
            path.push_back(std::move(at_hi));
            return path;
        }
        path.push_back(std::move(next));
    }
    throw ConvergenceError("ODE integration exhausted max_steps before the stop condition",
                           0.0);
}

}  // namespace conecal::numerics
