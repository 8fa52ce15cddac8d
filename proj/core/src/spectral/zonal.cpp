#include "conecal/spectral/zonal.hpp"

#include <cmath>
#include <numbers>

#include "conecal/errors.hpp"
#include "conecal/numerics/tridiagonal.hpp"

namespace conecal::spectral {

namespace {

// Antiderivative of sin^2.
double sin2_primitive(double x) { return 0.5 * (x - std::sin(x) * std::cos(x)); }

}  // namespace

std::vector<double> zonal_sphere_spectrum(int n_modes, int grid) {
    if (n_modes < 1) throw InvalidInputError("n_modes must be at least 1");
    if (grid < 200) throw InvalidInputError("zonal grid must have at least 200 cells");

    const int n = grid;                       // cells; nodes 0..n include the poles
    const double h = std::numbers::pi / n;

    // Self-adjoint form -(sin^2 f')' = lambda sin^2 f with natural conditions
    // at the poles (the weight vanishes there).
    std::vector<double> edge(n), mass(n + 1);
    for (int i = 0; i < n; ++i) {
        const double s = std::sin((i + 0.5) * h);
        edge[i] = s * s / h;
    }
    for (int i = 0; i <= n; ++i) {
        const double lo = std::max(0.0, (i - 0.5) * h);
        const double hi = std::min(std::numbers::pi, (i + 0.5) * h);
        mass[i] = sin2_primitive(hi) - sin2_primitive(lo);
    }

    numerics::TridiagonalSystem sys;
    sys.diagonal.resize(n + 1);
    sys.off_diagonal.resize(n);
    std::vector<double> ms(n + 1);
    for (int i = 0; i <= n; ++i) ms[i] = std::sqrt(mass[i]);
    for (int i = 0; i <= n; ++i) {
        double a = 0.0;
        if (i > 0) a += edge[i - 1];
        if (i < n) a += edge[i];
        sys.diagonal[i] = a / mass[i];
    }
    for (int i = 0; i < n; ++i) sys.off_diagonal[i] = -edge[i] / (ms[i] * ms[i + 1]);

    return numerics::smallest_eigenvalues(sys, static_cast<std::size_t>(n_modes));
}

}  // namespace conecal::spectral
