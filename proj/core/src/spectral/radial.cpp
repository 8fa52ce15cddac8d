#include "conecal/spectral/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conecal/errors.hpp"
#include "conecal/numerics/quadrature.hpp"
#include "conecal/numerics/tridiagonal.hpp"

namespace conecal::spectral {

namespace {

constexpr double kShift = 25.0 / 4.0;

// Fourth-order first derivative on a uniform grid (5-point one-sided rows at
// the ends).
std::vector<double> derivative4(std::span<const double> f, double step) {
    const std::size_t n = f.size();
    if (n < 5) throw InvalidInputError("fourth-order stencils need at least 5 samples");
    std::vector<double> d(n);
    const double inv = 1.0 / (12.0 * step);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * inv;
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] -
                f[n - 5]) * inv;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] +
                3.0 * f[n - 5]) * inv;
    return d;
}

struct Assembled {
    numerics::TridiagonalSystem system;  // standard symmetric form
    std::vector<double> mass_sqrt;       // sqrt of the diagonal mass, per unknown
    std::size_t unknowns;
    bool robin;                          // whether the z=0 node is an unknown
};

// Shared assembly for both coordinate forms.  `tau` holds the balancing
// weights of the unknowns (identically 1 for the z-form); the generalized
// pair (A, M) is reduced to a standard tridiagonal one by the diagonal mass
// scaling, which cancels the balancing weights from the interior rows.
Assembled assemble(const RadialProblem& p, const std::vector<double>& tau) {
    const std::size_t n_int = p.intervals();
    const bool robin = p.boundary == BoundaryConditionKind::robin;
    const std::size_t m = robin ? n_int : n_int - 1;  // unknown count
    const double dz = p.step;
    const double beta = 0.5 * (p.K - 6.0);  // Robin weight in the balanced form

    Assembled out;
    out.unknowns = m;
    out.robin = robin;
    out.system.diagonal.resize(m);
    out.system.off_diagonal.resize(m - 1);
    out.mass_sqrt.resize(m);

    // Unknown j corresponds to grid node j+1 (node 0 is the Dirichlet end).
    std::vector<double> a(m), mass(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double t2 = tau[j] * tau[j];
        const bool last_is_robin = robin && j + 1 == m;
        const double w = last_is_robin ? 0.5 : 1.0;
        mass[j] = t2 * w * dz;
        // Edge stiffness: (tau_{j} x_{j} - tau_{j-1} x_{j-1})^2 / dz per edge,
        // one edge on the Robin end, two elsewhere.
        const double edges = last_is_robin ? 1.0 : 2.0;
        a[j] = edges * t2 / dz + kShift * mass[j];
        if (last_is_robin) a[j] += beta;
    }
    for (std::size_t j = 0; j < m; ++j) out.mass_sqrt[j] = std::sqrt(mass[j]);
    for (std::size_t j = 0; j < m; ++j)
        out.system.diagonal[j] = a[j] / mass[j];
    for (std::size_t j = 0; j + 1 < m; ++j)
        out.system.off_diagonal[j] =
            -(tau[j] * tau[j + 1] / dz) / (out.mass_sqrt[j] * out.mass_sqrt[j + 1]);
    return out;
}

EigenResult solve(const RadialProblem& p, const std::vector<double>& tau,
                  const std::vector<double>& grid) {
    const Assembled asm_ = assemble(p, tau);
    const numerics::EigenPair pair = numerics::smallest_eigenpair(asm_.system);

    EigenResult result;
    result.problem = p;
    result.eigenvalue = pair.value;
    result.residual = pair.residual;
    result.grid = grid;
    result.eigenfunction.assign(grid.size(), 0.0);
    for (std::size_t j = 0; j < asm_.unknowns; ++j)
        result.eigenfunction[j + 1] = pair.vector[j] / asm_.mass_sqrt[j];
    // Dirichlet variant: the z = 0 node stays pinned at zero.
    return result;
}

}  // namespace

void RadialProblem::validate() const {
    if (!std::isfinite(K)) throw InvalidInputError("K must be finite");
    if (!(Z > 0.0)) throw InvalidInputError("truncation depth Z must be positive");
    if (!(step > 0.0)) throw InvalidInputError("grid step must be positive");
    if (step > 0.1)
        throw InvalidInputError("grid too coarse: step must be at most 0.1");
    const double ratio = Z / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio) || rounded < 10.0)
        throw InvalidInputError("Z/step must be an integer of at least 10");
    if (coordinate == RadialCoordinate::t_form && Z > 140.0)
        throw InvalidInputError(
            "t-form truncation deeper than Z = 140 underflows the t^4 weights; "
            "use the z-form");
}

std::size_t RadialProblem::intervals() const {
    return static_cast<std::size_t>(std::llround(Z / step));
}

std::vector<double> RadialProblem::z_nodes() const {
    const std::size_t n = intervals();
    std::vector<double> z(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        z[i] = -Z + step * static_cast<double>(i);
    z[n] = 0.0;
    return z;
}

std::vector<double> RadialProblem::t_nodes() const {
    std::vector<double> t = z_nodes();
    for (double& x : t) x = std::exp(x);
    return t;
}

EigenResult radial_eigensolve_z(const RadialProblem& problem) {
    problem.validate();
    RadialProblem p = problem;
    p.coordinate = RadialCoordinate::z_form;
    const std::size_t n_int = p.intervals();
    const std::size_t m =
        p.boundary == BoundaryConditionKind::robin ? n_int : n_int - 1;
    const std::vector<double> tau(m, 1.0);
    return solve(p, tau, p.z_nodes());
}

EigenResult radial_eigensolve_t(const RadialProblem& problem) {
    problem.validate();
    RadialProblem p = problem;
    p.coordinate = RadialCoordinate::t_form;
    const std::size_t n_int = p.intervals();
    const std::size_t m =
        p.boundary == BoundaryConditionKind::robin ? n_int : n_int - 1;
    // Balanced similarity weights tau_i = t_i^{5/2} at the unknown nodes.
    std::vector<double> tau(m);
    for (std::size_t j = 0; j < m; ++j)
        tau[j] = std::exp(2.5 * (-p.Z + p.step * static_cast<double>(j + 1)));
    if (m > 0) {
        // The Robin data arrives as (K-1)/2 in t variables; the balanced form
        // absorbs the similarity weight's slope 5/2 at t = 1.  assemble() uses
        // (K-6)/2 directly, which is the same number.
        tau[m - 1] = p.boundary == BoundaryConditionKind::robin ? 1.0 : tau[m - 1];
    }
    return solve(p, tau, p.t_nodes());
}

std::vector<double> to_log_coordinates(std::span<const double> g, std::span<const double> t) {
    if (g.size() != t.size())
        throw InvalidInputError("sample and grid sizes differ");
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(t[i] > 0.0)) throw InvalidInputError("t grid must be strictly positive");
        h[i] = std::pow(t[i], 2.5) * g[i];
    }
    return h;
}

std::vector<double> from_log_coordinates(std::span<const double> h, std::span<const double> z) {
    if (h.size() != z.size())
        throw InvalidInputError("sample and grid sizes differ");
    std::vector<double> g(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        g[i] = std::exp(-2.5 * z[i]) * h[i];
    return g;
}

std::vector<double> log_grid(std::span<const double> t) {
    std::vector<double> z(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0)) throw InvalidInputError("t grid must be strictly positive");
        z[i] = std::log(t[i]);
    }
    return z;
}

std::vector<double> exp_grid(std::span<const double> z) {
    std::vector<double> t(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) t[i] = std::exp(z[i]);
    return t;
}

double radial_energy(std::span<const double> h, double step, double K) {
    if (h.size() < 5) throw InvalidInputError("radial_energy needs at least 5 samples");
    if (!(step > 0.0)) throw InvalidInputError("step must be positive");
    double hmax = 0.0;
    for (double x : h) hmax = std::max(hmax, std::abs(x));
    if (hmax == 0.0) return 0.0;
    if (std::abs(h.front()) > 1e-8 * hmax)
        throw PreconditionError("input does not decay at the truncated end");

    const std::vector<double> dh = derivative4(h, step);
    std::vector<double> integrand(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        integrand[i] = dh[i] * dh[i] + kShift * h[i] * h[i];
    const double bulk = numerics::integrate_samples(integrand, step);
    return bulk + 0.5 * (K - 6.0) * h.back() * h.back();
}

double rayleigh_quotient_z(std::span<const double> h, double step, double K) {
    std::vector<double> sq(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) sq[i] = h[i] * h[i];
    const double norm2 = numerics::integrate_samples(sq, step);
    if (norm2 == 0.0) throw InvalidInputError("zero input");
    return radial_energy(h, step, K) / norm2;
}

namespace {

// Validates the geometric grid and returns the uniform z spacing.
double log_spacing(std::span<const double> t) {
    if (t.size() < 5) throw InvalidInputError("need at least 5 grid points");
    const double dz = std::log(t[1] / t[0]);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (!(t[i] > 0.0)) throw InvalidInputError("t grid must be strictly positive");
        if (std::abs(std::log(t[i + 1] / t[i]) - dz) > 1e-9 * std::abs(dz))
            throw InvalidInputError("t grid must be geometric (uniform in log t)");
    }
    return dz;
}

}  // namespace

double second_variation(std::span<const double> g, std::span<const double> t,
                        const AngularMode& mode, double K) {
    if (g.size() != t.size()) throw InvalidInputError("sample and grid sizes differ");
    const double dz = log_spacing(t);
    double gmax = 0.0;
    for (double x : g) gmax = std::max(gmax, std::abs(x));
    if (gmax == 0.0) return 0.0;
    if (!std::isfinite(gmax)) throw PreconditionError("g must be bounded");
    if (std::abs(g.front()) > 1e-6 * gmax)
        throw PreconditionError("g must vanish at the inner truncation radius");

    const std::vector<double> dg = derivative4(g, dz);
    const std::size_t n = g.size();
    std::vector<double> grad(n), norm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w5 = std::pow(t[i], 5.0);  // t^4 dt = t^5 dz
        grad[i] = w5 * dg[i] * dg[i];
        norm[i] = w5 * g[i] * g[i];
    }
    const double lambda = angular_eigenvalue(mode);
    return numerics::integrate_samples(grad, dz) +
           lambda * numerics::integrate_samples(norm, dz) +
           0.5 * (K - 1.0) * g.back() * g.back();
}

double second_variation_quotient(std::span<const double> g, std::span<const double> t,
                                 const AngularMode& mode, double K) {
    const double dz = log_spacing(t);
    std::vector<double> norm(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        norm[i] = std::pow(t[i], 5.0) * g[i] * g[i];
    const double n2 = numerics::integrate_samples(norm, dz);
    if (n2 == 0.0) throw InvalidInputError("zero input");
    return second_variation(g, t, mode, K) / n2;
}

}  // namespace conecal::spectral
