#include "conecal/calibration/field.hpp"

#include <cmath>
#include <numbers>

#include "conecal/errors.hpp"

namespace conecal::calibration {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

double angle_gap(Vec2 p) { return std::abs(std::atan2(p.v, p.u) - kQuarterPi); }

}  // namespace

CalibrationField CalibrationField::build(const FieldOptions& options) {
    CalibrationField field;
    field.above = integrate_base_leaf(Side::above_diagonal, options.tol, options.extent);
    field.below = integrate_base_leaf(Side::below_diagonal, options.tol, options.extent);
    field.max_radius = 2.0;
    return field;
}

double CalibrationField::diagonal_floor(Side side) const {
    const Leaf& l = leaf(side);
    return l.angle_gap_at_radius(l.max_radius());
}

LeafFoot leaf_through(Vec2 p, const CalibrationField& field) {
    if (p.u < 0.0 || p.v < 0.0)
        throw InvalidInputError("point outside the closed quadrant");
    const double r = p.norm();
    if (r == 0.0)
        throw InvalidInputError("degenerate: the origin lies on the cone");
    if (r > field.max_radius * (1.0 + 1e-12))
        throw OutOfDomainError("point beyond the calibrated ball of radius 2");
    if (p.u == p.v)
        throw InvalidInputError("degenerate: point on the diagonal; the field "
                                "there is the cone normal by continuity");

    const Side side = p.v > p.u ? Side::above_diagonal : Side::below_diagonal;
    const Leaf& leaf = field.leaf(side);
    const double gap_p = angle_gap(p);

    LeafFoot result;
    result.side = side;

    // Axis points are the leaf starts themselves.
    if (gap_p >= kQuarterPi * (1.0 - 1e-14)) {
        result.scale = r;
        const LeafPoint start = leaf.eval(leaf.s.front());
        result.foot = result.scale * start.p;
        result.alpha = start.alpha;
        return result;
    }

    if (gap_p <= leaf.angle_gap_at_radius(leaf.max_radius()))
        throw InvalidInputError("degenerate: point closer to the diagonal than "
                                "the base leaf resolves");

    // The leaf through p is lambda * (base leaf) with the base point at radius
    // r / lambda; the angular gap of that point decreases in the radius, so
    // the sign of gap_p - gap(base) is monotone in lambda.  Bisection in
    // log(lambda) over the window [1e-6, 1e6] intersected with the table span.
    double lo = std::log(std::max(1e-6, r / leaf.max_radius()));
    double hi = std::log(std::min(1e6, r / leaf.min_radius()));
    LeafPoint pt{};
    double lambda = r;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        lambda = std::exp(mid);
        pt = leaf.at_radius(r / lambda);
        const double s = gap_p - angle_gap(pt.p);
        if (s > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    lambda = std::exp(0.5 * (lo + hi));
    pt = leaf.at_radius(r / lambda);
    result.scale = lambda;
    result.foot = lambda * pt.p;
    result.alpha = pt.alpha;
    return result;
}

Vec2 field_X(Vec2 p, const CalibrationField& field) {
    static const Vec2 kConeNormal{-1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
    if (p.u < 0.0 || p.v < 0.0)
        throw InvalidInputError("point outside the closed quadrant");
    const double r = p.norm();
    if (r > field.max_radius * (1.0 + 1e-12))
        throw OutOfDomainError("point beyond the calibrated ball of radius 2");
    if (r == 0.0 || p.u == p.v) return kConeNormal;

    const Side side = p.v > p.u ? Side::above_diagonal : Side::below_diagonal;
    if (angle_gap(p) <= field.diagonal_floor(side)) return kConeNormal;

    const LeafFoot foot = leaf_through(p, field);
    // Left normal of the outward-running leaf tangent: continuous across the
    // diagonal and equal to the cone normal there, pointing out of {u > v}.
    return {-std::sin(foot.alpha), std::cos(foot.alpha)};
}

double weighted_divergence(const std::function<Vec2(Vec2)>& field, Vec2 p, double h) {
    if (!(h > 0.0)) throw InvalidInputError("stencil spacing must be positive");
    if (p.u < 2.0 * h || p.v < 2.0 * h || p.norm() > 2.0 - 2.0 * h)
        throw PreconditionError("divergence stencil leaves the domain");

    const Vec2 fc = field(p);
    const Vec2 fu_p = field({p.u + h, p.v});
    const Vec2 fu_m = field({p.u - h, p.v});
    const Vec2 fv_p = field({p.u, p.v + h});
    const Vec2 fv_m = field({p.u, p.v - h});

    const double div_flat = (fu_p.u - fu_m.u) / (2.0 * h) + (fv_p.v - fv_m.v) / (2.0 * h);
    return div_flat + 3.0 * (fc.u / p.u + fc.v / p.v);
}

double divergence_residual(Vec2 p, const CalibrationField& field, double h) {
    auto X = [&field](Vec2 q) { return field_X(q, field); };
    return std::abs(weighted_divergence(X, p, h));
}

}  // namespace conecal::calibration
