#pragma once

#include "conecal/geometry/vec2.hpp"

namespace conecal::geometry {

/// Shape of the cutoff chi in the ridge profile phi(a) = a^2 chi(a).
enum class CutoffProfile {
    /// chi = 1 on [0, upsilon], quintic smootherstep descent to 0 on
    /// [upsilon, 2 upsilon] (vanishing first and second derivatives at both
    /// ends), 0 beyond.
    smootherstep_plateau,
};

/// Parameters of the deformed ball: boundary radius
/// r(theta) = 1 + K * phi(d(theta)) in the quadrant cross-section.
struct DomainParams {
    double K = 8.0;          // ridge amplitude
    double upsilon = 0.1;    // ridge width scale, in (0, 0.3]
    CutoffProfile chi = CutoffProfile::smootherstep_plateau;

    void validate() const;   // throws InvalidInputError
};

/// Cutoff chi(a) and its derivative for the given parameters.
double cutoff_chi(double a, const DomainParams& params);
double cutoff_chi_derivative(double a, const DomainParams& params);

/// Ridge profile phi(a) = a^2 chi(a); vanishes with its derivative at a = 0
/// and identically for a >= 2 upsilon.
double bump(double a, const DomainParams& params);
double bump_derivative(double a, const DomainParams& params);

/// Location of the profile's interior maximum, in (upsilon, 2 upsilon).
double bump_crest(const DomainParams& params);

/// Euclidean distance in R^8 from the S^7 point at quadrant angle theta to
/// the trace of the cone on the sphere: 2 |sin((theta - pi/4) / 2)|.
/// theta must lie in [0, pi/2].
double cross_section_distance(double theta);

/// d(theta) derivative; zero at theta = pi/4 by the convention that the
/// product phi'(d) d'(theta) is continuous there.
double cross_section_distance_derivative(double theta);

/// Boundary radius rho(theta) = 1 + K * bump(d(theta)), and its
/// theta-derivative.
double boundary_radius(double theta, const DomainParams& params);
double boundary_radius_derivative(double theta, const DomainParams& params);

/// Cartesian point of the boundary curve at angle theta.
Vec2 boundary_point(double theta, const DomainParams& params);

/// Outward unit normal of the polar boundary curve at angle theta.
Vec2 boundary_normal(double theta, const DomainParams& params);

}  // namespace conecal::geometry
