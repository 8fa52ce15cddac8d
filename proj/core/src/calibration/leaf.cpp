#include "conecal/calibration/leaf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conecal/errors.hpp"
#include "conecal/numerics/ode.hpp"

namespace conecal::calibration {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

double leaf_curvature(double uu, double vv, double a) {
    return 3.0 * (std::cos(a) / vv - std::sin(a) / uu);
}

struct Hermite {
    double f0, d0, f1, d1, len;
    double operator()(double tau) const {
        const double t2 = tau * tau, t3 = t2 * tau;
        return (2.0 * t3 - 3.0 * t2 + 1.0) * f0 + (t3 - 2.0 * t2 + tau) * len * d0 +
               (-2.0 * t3 + 3.0 * t2) * f1 + (t3 - t2) * len * d1;
    }
};

}  // namespace

LeafPoint Leaf::eval(double arclength) const {
    if (size() < 2) throw InvalidInputError("leaf has too few nodes");
    if (arclength < s.front() - 1e-12 || arclength > s.back() + 1e-12)
        throw OutOfDomainError("arclength outside the stored leaf");
    arclength = std::clamp(arclength, s.front(), s.back());

    const auto it = std::upper_bound(s.begin(), s.end(), arclength);
    std::size_t k = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
    if (k + 1 >= size()) k = size() - 2;
    const double len = s[k + 1] - s[k];
    const double tau = (arclength - s[k]) / len;

    const Hermite hu{u[k], std::cos(alpha[k]), u[k + 1], std::cos(alpha[k + 1]), len};
    const Hermite hv{v[k], std::sin(alpha[k]), v[k + 1], std::sin(alpha[k + 1]), len};
    const Hermite ha{alpha[k], dalpha[k], alpha[k + 1], dalpha[k + 1], len};
    return {{hu(tau), hv(tau)}, ha(tau)};
}

double Leaf::arclength_at_radius(double r) const {
    if (size() < 2) throw InvalidInputError("leaf has too few nodes");
    if (r < radius.front() - 1e-12 || r > radius.back() * (1.0 + 1e-9))
        throw OutOfDomainError("radius outside the stored leaf");
    r = std::clamp(r, radius.front(), radius.back());

    const auto it = std::upper_bound(radius.begin(), radius.end(), r);
    std::size_t k = it == radius.begin() ? 0 : static_cast<std::size_t>(it - radius.begin()) - 1;
    if (k + 1 >= size()) k = size() - 2;

    // Radius is strictly increasing along the leaf; safeguarded Newton on the
    // Hermite interpolant inside the bracketing segment.
    double lo = s[k], hi = s[k + 1];
    double x = lo + (hi - lo) * std::clamp((r - radius[k]) / (radius[k + 1] - radius[k]),
                                           0.0, 1.0);
    for (int iter = 0; iter < 60; ++iter) {
        const LeafPoint pt = eval(x);
        const double rr = pt.p.norm();
        const double f = rr - r;
        if (std::abs(f) <= 1e-14 * std::max(1.0, r)) break;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        const double drds = (pt.p.u * std::cos(pt.alpha) + pt.p.v * std::sin(pt.alpha)) / rr;
        double next = x - f / drds;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return x;
}

LeafPoint Leaf::at_radius(double r) const { return eval(arclength_at_radius(r)); }

double Leaf::angle_gap_at_radius(double r) const {
    const LeafPoint pt = at_radius(r);
    return std::abs(std::atan2(pt.p.v, pt.p.u) - kQuarterPi);
}

geometry::GeneratingCurve Leaf::to_generating_curve() const {
    std::vector<Vec2> pts(size());
    for (std::size_t i = 0; i < size(); ++i) pts[i] = {u[i], v[i]};
    return geometry::GeneratingCurve::from_points(std::move(pts), side);
}

Leaf integrate_base_leaf(Side side, double tol, double extent) {
    if (!(tol > 0.0 && tol <= 1e-8))
        throw InvalidInputError("leaf tolerance must lie in (0, 1e-8]");
    if (!(extent >= 2.0))
        throw InvalidInputError("leaf must extend to at least radius 2");

    const bool above = side == Side::above_diagonal;

    auto field = [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = std::cos(y[2]);
        dy[1] = std::sin(y[2]);
        dy[2] = leaf_curvature(y[0], y[1], y[2]);
    };

    Leaf leaf;
    leaf.side = side;
    leaf.scale = 1.0;

    auto push = [&leaf](double s, double uu, double vv, double a, double da) {
        leaf.s.push_back(s);
        leaf.u.push_back(uu);
        leaf.v.push_back(vv);
        leaf.alpha.push_back(a);
        leaf.dalpha.push_back(da);
        leaf.radius.push_back(std::hypot(uu, vv));
    };

    // Axis node, with the removable curvature limit 3/(4 v0), then the series
    // start v(u) = 1 + (3/8) u^2 (in the axis frame) out to u = 1e-3.
    const double off = 1e-3;
    const double far = 1.0 + 0.375 * off * off;
    const double tilt = std::atan(0.75 * off);
    const double s_off = off * (1.0 + 0.09375 * off * off);

    numerics::OdeState start;
    start.x = s_off;
    if (above) {
        push(0.0, 0.0, 1.0, 0.0, 0.75);
        start.y = {off, far, tilt};
    } else {
        push(0.0, 1.0, 0.0, std::numbers::pi / 2.0, -0.75);
        start.y = {far, off, std::numbers::pi / 2.0 - tilt};
    }
    push(start.x, start.y[0], start.y[1], start.y[2],
         leaf_curvature(start.y[0], start.y[1], start.y[2]));

    // Doubling radius segments with an arclength cap proportional to the
    // radius: the Hermite table stays dense where the leaf bends and
    // coarsens in the asymptotic regime.
    numerics::OdeState cur = start;
    double target = 2.0;
    while (true) {
        target = std::min(target, extent);
        numerics::OdeOptions opts;
        opts.max_step = 0.004 * std::hypot(cur.y[0], cur.y[1]);
        auto stop = [target](const numerics::OdeState& st) {
            return std::hypot(st.y[0], st.y[1]) >= target;
        };
        auto path = numerics::integrate_ode(field, cur, stop, tol, opts);
        for (std::size_t i = 1; i < path.size(); ++i) {
            const auto& st = path[i];
            const double gap = above ? st.y[1] - st.y[0] : st.y[0] - st.y[1];
            if (gap <= 0.0)
                throw IntegrationError("leaf trajectory crossed the diagonal");
            push(st.x, st.y[0], st.y[1], st.y[2],
                 leaf_curvature(st.y[0], st.y[1], st.y[2]));
        }
        cur = path.back();
        if (std::hypot(cur.y[0], cur.y[1]) >= extent * (1.0 - 1e-12)) break;
        target *= 2.0;
    }
    return leaf;
}

}  // namespace conecal::calibration
