#include "conecal/geometry/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conecal/errors.hpp"

namespace conecal::geometry {

namespace {

// (2 pi^2)^2: the squared volume of the unit 3-sphere.
const double kOrbitFactor = 4.0 * std::pow(std::numbers::pi, 4);

// 4-point Gauss-Legendre on [0, 1]; exact through degree 7.
constexpr double kGaussX[4] = {
    0.5 - 0.43056815579702629 /* sqrt((3+2*sqrt(6/5))/7)/2 */,
    0.5 - 0.16999052179242816,
    0.5 + 0.16999052179242816,
    0.5 + 0.43056815579702629,
};
constexpr double kGaussW[4] = {
    0.17392742256872692 /* (18-sqrt(30))/72 */,
    0.32607257743127305,
    0.32607257743127305,
    0.17392742256872692,
};

double cubed(double x) { return x * x * x; }

// Orientation of the triangle (a, b, c).
double orient(Vec2 a, Vec2 b, Vec2 c) {
    return (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u);
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0.0) != (o2 > 0.0)) && ((o3 > 0.0) != (o4 > 0.0)) &&
           o1 != 0.0 && o2 != 0.0 && o3 != 0.0 && o4 != 0.0;
}

}  // namespace

Side opposite(Side s) {
    return s == Side::below_diagonal ? Side::above_diagonal : Side::below_diagonal;
}

GeneratingCurve GeneratingCurve::from_points(std::vector<Vec2> points, Side side) {
    GeneratingCurve c;
    c.vertices = std::move(points);
    c.side = side;
    c.arclength.resize(c.vertices.size());
    double s = 0.0;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        if (i > 0) s += (c.vertices[i] - c.vertices[i - 1]).norm();
        c.arclength[i] = s;
    }
    return c;
}

void GeneratingCurve::validate() const {
    if (vertices.size() != arclength.size())
        throw InvalidInputError("curve arclength table size mismatch");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec2& p = vertices[i];
        if (!std::isfinite(p.u) || !std::isfinite(p.v))
            throw InvalidInputError("curve vertex is not finite");
        if (p.u < -1e-12 || p.v < -1e-12)
            throw InvalidInputError("curve vertex outside the closed quadrant");
        if (i > 0) {
            if ((vertices[i] - vertices[i - 1]).norm() == 0.0)
                throw InvalidInputError("duplicate consecutive curve vertices");
            if (!(arclength[i] > arclength[i - 1]))
                throw InvalidInputError("curve arclength must be strictly increasing");
        }
    }
}

GeneratingCurve GeneratingCurve::scaled(double factor) const {
    GeneratingCurve out = *this;
    for (Vec2& p : out.vertices) p = factor * p;
    for (double& s : out.arclength) s *= factor;
    return out;
}

void ReducedRegion::validate_simple() const {
    const std::size_t n = loop.size();
    if (n < 3) return;

    struct Seg {
        double min_u, max_u;
        std::size_t i;
    };
    std::vector<Seg> segs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = loop[i], b = loop[(i + 1) % n];
        segs[i] = {std::min(a.u, b.u), std::max(a.u, b.u), i};
    }
    std::sort(segs.begin(), segs.end(),
              [](const Seg& x, const Seg& y) { return x.min_u < y.min_u; });

    for (std::size_t si = 0; si < n; ++si) {
        for (std::size_t sj = si + 1; sj < n; ++sj) {
            if (segs[sj].min_u > segs[si].max_u) break;  // sorted prefilter
            const std::size_t i = segs[si].i, j = segs[sj].i;
            const std::size_t lo = std::min(i, j), hi = std::max(i, j);
            if (hi - lo == 1 || (lo == 0 && hi == n - 1)) continue;  // adjacent
            if (segments_cross(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n]))
                throw InvalidInputError("region boundary self-intersects");
        }
    }
}

double weighted_area(const GeneratingCurve& curve) {
    curve.validate();
    if (curve.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const Vec2 a = curve.vertices[i], b = curve.vertices[i + 1];
        const double len = (b - a).norm();
        double seg = 0.0;
        for (int q = 0; q < 4; ++q) {
            const Vec2 p = a + kGaussX[q] * (b - a);
            seg += kGaussW[q] * cubed(p.u) * cubed(p.v);
        }
        total += seg * len;
    }
    return kOrbitFactor * total;
}

namespace detail {

double loop_weighted_volume(const std::vector<Vec2>& loop) {
    const std::size_t n = loop.size();
    if (n < 3) return 0.0;
    // Green's theorem with P = u^4 v^3 / 4:  dP/du = u^3 v^3.
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = loop[i], b = loop[(i + 1) % n];
        const double dv = b.v - a.v;
        if (dv == 0.0) continue;
        double seg = 0.0;
        for (int q = 0; q < 4; ++q) {
            const Vec2 p = a + kGaussX[q] * (b - a);
            seg += kGaussW[q] * p.u * p.u * p.u * p.u * cubed(p.v);
        }
        total += 0.25 * seg * dv;
    }
    return kOrbitFactor * total;
}

}  // namespace detail

double weighted_volume(const ReducedRegion& region) {
    region.validate_simple();
    return detail::loop_weighted_volume(region.loop);
}

GeneratingCurve cone_segment(double radius, std::size_t vertices) {
    vertices = std::max<std::size_t>(vertices, 2);
    std::vector<Vec2> pts(vertices);
    const double end = radius / std::numbers::sqrt2;
    for (std::size_t i = 0; i < vertices; ++i) {
        const double t = end * static_cast<double>(i) / static_cast<double>(vertices - 1);
        pts[i] = {t, t};
    }
    return GeneratingCurve::from_points(std::move(pts), Side::below_diagonal);
}

std::vector<Vec2> boundary_arc(const DomainParams& params, double theta_lo,
                               double theta_hi, std::size_t n) {
    std::vector<Vec2> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double theta =
            theta_lo + (theta_hi - theta_lo) * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = boundary_point(theta, params);
    }
    return pts;
}

ReducedRegion reduced_cone_region(const DomainParams& params, std::size_t n_arc) {
    params.validate();
    ReducedRegion region;
    region.loop.push_back({0.0, 0.0});
    // u-axis out to the boundary, then the arc up to the cone trace; the
    // closing edge back to the origin is the cone segment.
    auto arc = boundary_arc(params, 0.0, std::numbers::pi / 4.0, n_arc);
    region.loop.insert(region.loop.end(), arc.begin(), arc.end());
    return region;
}

double reduced_cone_region_volume(const DomainParams& params, double rel_tol) {
    std::size_t n = 1024;
    double prev = detail::loop_weighted_volume(reduced_cone_region(params, n).loop);
    for (int i = 0; i < 8; ++i) {
        n *= 2;
        const double next = detail::loop_weighted_volume(reduced_cone_region(params, n).loop);
        if (std::abs(next - prev) <= rel_tol * std::abs(next)) return next;
        prev = next;
    }
    return prev;
}

}  // namespace conecal::geometry
