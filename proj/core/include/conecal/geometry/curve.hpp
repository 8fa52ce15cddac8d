#pragma once

#include <cstddef>
#include <vector>

#include "conecal/geometry/domain.hpp"
#include "conecal/geometry/vec2.hpp"

namespace conecal::geometry {

/// Which component of the quadrant minus the diagonal a curve generates.
enum class Side {
    below_diagonal,   // u > v, the component containing the u-axis
    above_diagonal,   // v > u
};

Side opposite(Side s);

/// Arclength-parameterized polyline in the closed quadrant.  The orbit of the
/// curve under the block rotations of R^8 is a 7-dimensional hypersurface;
/// its area reduces to the u^3 v^3 weighted line integral below.
struct GeneratingCurve {
    std::vector<Vec2> vertices;
    std::vector<double> arclength;   // cumulative chord length, same size
    Side side = Side::below_diagonal;

    static GeneratingCurve from_points(std::vector<Vec2> points, Side side);

    std::size_t size() const noexcept { return vertices.size(); }
    double length() const noexcept { return arclength.empty() ? 0.0 : arclength.back(); }

    /// Throws InvalidInputError on duplicate consecutive vertices, a
    /// non-increasing arclength table, or points outside the closed quadrant.
    void validate() const;

    GeneratingCurve scaled(double factor) const;
};

/// Closed region in the quadrant given by a simple counterclockwise loop.
struct ReducedRegion {
    std::vector<Vec2> loop;

    /// Throws InvalidInputError if the loop self-intersects.
    void validate_simple() const;
};

/// Weighted length (2 pi^2)^2 * integral of u^3 v^3 ds along the polyline;
/// the reduced 7-area of the generated hypersurface.  Exact per segment
/// (4-point Gauss rule on a degree-6 integrand).
double weighted_area(const GeneratingCurve& curve);

/// Weighted volume (2 pi^2)^2 * double integral of u^3 v^3 over the region;
/// the reduced 8-volume.  Green's theorem along the loop, exact per segment.
/// Throws InvalidInputError on a self-intersecting loop.  Loops with fewer
/// than three vertices are degenerate and have volume zero.
double weighted_volume(const ReducedRegion& region);

/// Cone generating segment from the origin to radius `radius` along u = v.
GeneratingCurve cone_segment(double radius = 1.0, std::size_t vertices = 2);

/// Boundary arc of the deformed domain, sampled at n+1 angles in
/// [theta_lo, theta_hi].
std::vector<Vec2> boundary_arc(const DomainParams& params, double theta_lo,
                               double theta_hi, std::size_t n);

/// Reduced region bounded by the u-axis, the boundary arc over [0, pi/4],
/// and the cone segment: the below-diagonal half of the domain.
ReducedRegion reduced_cone_region(const DomainParams& params, std::size_t n_arc);

/// Volume of the reduced cone region, with the arc refined by doubling until
/// the relative change drops below rel_tol.
double reduced_cone_region_volume(const DomainParams& params, double rel_tol = 1e-8);

namespace detail {
// Loop volume without the simplicity check; for iteration-heavy callers that
// construct loops known to be simple.
double loop_weighted_volume(const std::vector<Vec2>& loop);
}  // namespace detail

}  // namespace conecal::geometry
