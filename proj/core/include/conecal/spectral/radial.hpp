#pragma once

#include <span>
#include <vector>

#include "conecal/spectral/closed_form.hpp"

namespace conecal::spectral {

enum class RadialCoordinate {
    t_form,   // Euler operator -t^2 g'' - 6 t g' on (0, 1], weight t^4
    z_form,   // -d^2/dz^2 + 25/4 on (-infty, 0] after g = t^(-5/2) h, z = log t
};

enum class BoundaryConditionKind {
    robin,      // (K-1)/2 g(1) + g'(1) = 0, equivalently (K-6)/2 h(0) + h'(0) = 0
    dirichlet,  // h(0) = 0; the K -> infinity limit
};

/// Discretized principal-eigenvalue problem for the radial part of the
/// second variation.  The grid is uniform in z = log t with Dirichlet
/// truncation at z = -Z (t = e^{-Z}).
struct RadialProblem {
    double K = 8.0;
    double Z = 100.0;       // truncation depth
    double step = 0.005;    // z grid spacing; Z/step must be an integer >= 10
    RadialCoordinate coordinate = RadialCoordinate::z_form;
    BoundaryConditionKind boundary = BoundaryConditionKind::robin;

    void validate() const;
    std::size_t intervals() const;      // Z / step
    std::vector<double> z_nodes() const;  // -Z .. 0, intervals()+1 nodes
    std::vector<double> t_nodes() const;  // e^{-Z} .. 1
};

struct EigenResult {
    double eigenvalue = 0.0;
    std::vector<double> eigenfunction;  // natural variables on `grid`, including
                                        // the truncation node (value 0)
    std::vector<double> grid;           // z nodes (z-form) or t nodes (t-form)
    double residual = 0.0;              // relative residual of the discrete pair
    RadialProblem problem;
};

/// Principal eigenpair of -d^2/dz^2 + 25/4 on [-Z, 0] with the Robin (or
/// Dirichlet) condition at z = 0 and Dirichlet at z = -Z.  Ghost-point
/// discretization with half-cell boundary mass; symmetric and second order.
EigenResult radial_eigensolve_z(const RadialProblem& problem);

/// Principal eigenpair of the t^4-weighted Euler problem on [e^{-Z}, 1],
/// assembled in the balanced variables t^{5/2} g(t) on the geometric grid.
/// Agrees with radial_eigensolve_z on matched grids.
EigenResult radial_eigensolve_t(const RadialProblem& problem);

/// Change of dependent and independent variables g(t) = t^{-5/2} h(log t).
/// Forward: h_i = t_i^{5/2} g_i on z_i = log t_i.  Inverse: g_i = e^{-5 z_i/2} h_i.
std::vector<double> to_log_coordinates(std::span<const double> g, std::span<const double> t);
std::vector<double> from_log_coordinates(std::span<const double> h, std::span<const double> z);
std::vector<double> log_grid(std::span<const double> t);
std::vector<double> exp_grid(std::span<const double> z);

/// Energy of the z-form quadratic form,
///   integral of h'^2 + (25/4) h^2 over [-Z, 0]  +  (K-6)/2 * h(0)^2,
/// with Z = step * (n-1).  Fourth-order stencils and composite quadrature.
/// Requires decay at the truncated end: |h(-Z)| <= 1e-8 * max|h|.
double radial_energy(std::span<const double> h, double step, double K);

/// radial_energy divided by the L^2 norm of h.
double rayleigh_quotient_z(std::span<const double> h, double step, double K);

/// Second variation of area for the separated perturbation g(t) Y_mode(omega)
/// with unit-normalized angular factor, evaluated by t^4-weighted quadrature
/// on the geometric grid t (uniform in log t):
///   integral t^6 g'^2 dt + angular_eigenvalue(mode) * integral t^4 g^2 dt
///   + (K-1)/2 * g(1)^2.
double second_variation(std::span<const double> g, std::span<const double> t,
                        const AngularMode& mode, double K);

/// second_variation divided by the t^4-weighted norm of g.
double second_variation_quotient(std::span<const double> g, std::span<const double> t,
                                 const AngularMode& mode, double K);

}  // namespace conecal::spectral
