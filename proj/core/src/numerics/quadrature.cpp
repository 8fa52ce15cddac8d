#include "conecal/numerics/quadrature.hpp"

#include <cmath>

#include "conecal/errors.hpp"

namespace conecal::numerics {

double integrate_samples(std::span<const double> values, double step) {
    const std::size_t n = values.size();
    if (n < 2) throw InvalidInputError("integrate_samples needs at least two samples");
    if (!(step > 0.0) || !std::isfinite(step))
        throw InvalidInputError("integrate_samples needs a positive finite step");

    const std::size_t intervals = n - 1;
    if (intervals % 2 == 0) {
        double odd = 0.0, even = 0.0;
        for (std::size_t i = 1; i < intervals; i += 2) odd += values[i];
        for (std::size_t i = 2; i < intervals; i += 2) even += values[i];
        return step / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
    }
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i < intervals; ++i) sum += values[i];
    return step * sum;
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adapt(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, max_depth);
}

}  // namespace conecal::numerics
