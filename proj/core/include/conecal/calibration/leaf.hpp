#pragma once

#include "conecal/geometry/curve.hpp"
#include "conecal/geometry/vec2.hpp"

namespace conecal::calibration {

using geometry::Side;
using geometry::Vec2;

struct LeafPoint {
    Vec2 p;
    double alpha = 0.0;  // tangent angle
};

/// One leaf of the minimal foliation of a quadrant component, stored as
/// arclength nodes with tangent angle and curvature.  Evaluation between
/// nodes is cubic Hermite, with derivatives supplied by the generating ODE
///   u' = cos(alpha),  v' = sin(alpha),
///   alpha' = 3 (cos(alpha)/v - sin(alpha)/u),
/// the zero-mean-curvature condition for the u^3 v^3 weighted length.
struct Leaf {
    Side side = Side::above_diagonal;
    double scale = 1.0;

    std::vector<double> s;       // arclength
    std::vector<double> u, v;
    std::vector<double> alpha;
    std::vector<double> dalpha;  // curvature alpha'(s) at the nodes
    std::vector<double> radius;  // strictly increasing

    std::size_t size() const noexcept { return s.size(); }
    double min_radius() const { return radius.front(); }
    double max_radius() const { return radius.back(); }

    LeafPoint eval(double arclength) const;

    /// Arclength of the unique leaf point at the given radius
    /// (min_radius() <= r <= max_radius()).
    double arclength_at_radius(double r) const;
    LeafPoint at_radius(double r) const;

    /// |theta - pi/4| of the leaf point at radius r: the angular gap between
    /// the leaf and the diagonal, strictly decreasing in r.
    double angle_gap_at_radius(double r) const;

    geometry::GeneratingCurve to_generating_curve() const;
};

/// Integrates the base leaf of the requested side: axis crossing at distance
/// 1 ((0,1) above, (1,0) below), regularized series start, adaptive
/// integration out to the requested radius.  Throws IntegrationError if the
/// trajectory touches the diagonal, SingularityError on step underflow.
/// tol must be at most 1e-8.
Leaf integrate_base_leaf(Side side, double tol = 1e-10, double extent = 1000.0);

}  // namespace conecal::calibration
