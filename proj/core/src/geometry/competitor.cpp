#include "conecal/geometry/competitor.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "conecal/errors.hpp"
#include "conecal/numerics/root_find.hpp"

namespace conecal::geometry {

namespace {

const double kSqrt2 = std::numbers::sqrt2;

// Mollifier bump: exp(1 - 1/(1-x^2)) on (-1, 1), zero outside; peak value 1.
double mollifier(double x) {
    const double x2 = x * x;
    if (x2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x2));
}

// Ascending smootherstep on [0, 1].
double smootherstep_up(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

constexpr double kRampStart = 0.93;

// Volume-matching shear profile, supported on [0.2, 0.9].
double shear_profile(double t) { return mollifier((t - 0.55) / 0.35); }

double displacement(const PerturbationSpec& spec, double shift, double t) {
    return spec.amplitude * mollifier((t - spec.center) / spec.width) +
           spec.edge_amplitude * smootherstep_up((t - kRampStart) / (1.0 - kRampStart)) +
           shift * shear_profile(t);
}

Vec2 curve_point(const PerturbationSpec& spec, double shift, double t) {
    const double w = displacement(spec, shift, t);
    const double c = t / kSqrt2;
    // Normal (1,-1)/sqrt(2) points from the diagonal into {u > v}.
    return {c + w / kSqrt2, c - w / kSqrt2};
}

// Radial coordinate where the perturbed curve crosses the domain boundary.
double find_exit(const PerturbationSpec& spec, double shift, const DomainParams& params) {
    auto excess = [&](double t) {
        const Vec2 p = curve_point(spec, shift, t);
        const double theta = std::atan2(p.v, p.u);
        return p.norm() - boundary_radius(theta, params);
    };
    const double rho_max = 1.0 + std::abs(params.K) * 4.0 * params.upsilon * params.upsilon;
    numerics::Bracket bracket{0.8, rho_max + params.upsilon + 0.1, 1e-14};
    return numerics::find_root(excess, bracket);
}

struct BuiltCurve {
    std::vector<Vec2> points;
    double theta_end;
};

BuiltCurve build_curve(const PerturbationSpec& spec, double shift,
                       const DomainParams& params, std::size_t n_vertices) {
    const double t_end = find_exit(spec, shift, params);
    BuiltCurve out;
    out.points.resize(n_vertices);
    for (std::size_t i = 0; i < n_vertices; ++i) {
        const double t = t_end * static_cast<double>(i) / static_cast<double>(n_vertices - 1);
        Vec2 p = curve_point(spec, shift, t);
        if (p.u < 0.0) p.u = 0.0;
        if (p.v < 0.0) p.v = 0.0;
        out.points[i] = p;
        const double theta = std::atan2(p.v, p.u);
        if (i + 1 < n_vertices && p.norm() > boundary_radius(theta, params) + 1e-9)
            throw ConstraintError("competitor curve leaves the domain before its endpoint");
    }
    const Vec2 end = out.points.back();
    out.theta_end = std::atan2(end.v, end.u);
    return out;
}

// N' loop: origin, u-axis exit, boundary arc up to theta_end, perturbed curve
// reversed back toward the origin.
std::vector<Vec2> build_loop(const BuiltCurve& c, const DomainParams& params,
                             std::size_t n_arc) {
    std::vector<Vec2> loop;
    loop.reserve(n_arc + c.points.size() + 2);
    loop.push_back({0.0, 0.0});
    auto arc = boundary_arc(params, 0.0, c.theta_end, n_arc);
    loop.insert(loop.end(), arc.begin(), arc.end());
    // Arc already ends at the curve endpoint; walk the curve back, skipping
    // the duplicated endpoint and origin.
    for (std::size_t i = c.points.size() - 1; i-- > 1;) loop.push_back(c.points[i]);
    return loop;
}

}  // namespace

PerturbationSpec PerturbationSpec::random(std::uint64_t seed, const DomainParams& params) {
    params.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ups = params.upsilon;

    PerturbationSpec spec;
    const double s1 = unit(rng) < 0.5 ? -1.0 : 1.0;
    spec.amplitude = s1 * (ups / 8.0 + unit(rng) * ups / 8.0);      // +-[ups/8, ups/4]
    spec.center = 0.35 + 0.35 * unit(rng);
    spec.width = 0.15 + 0.10 * unit(rng);
    const double s2 = unit(rng) < 0.5 ? -1.0 : 1.0;
    spec.edge_amplitude = s2 * (ups / 25.0 + unit(rng) * (ups / 8.0 - ups / 25.0));
    spec.volume_match = true;
    return spec;
}

void PerturbationSpec::validate(const DomainParams& params) const {
    params.validate();
    if (!std::isfinite(amplitude) || !std::isfinite(edge_amplitude) ||
        !std::isfinite(center) || !std::isfinite(width))
        throw InvalidInputError("perturbation parameters must be finite");
    if (!(width > 0.0)) throw InvalidInputError("perturbation width must be positive");
    const double band = 0.5 * params.upsilon;
    if (std::abs(edge_amplitude) > band)
        throw ConstraintError("boundary displacement exceeds the upsilon/2 closeness band");
    if (center + width > kRampStart && std::abs(amplitude) > band)
        throw ConstraintError("interior bump reaches the boundary zone above the closeness band");
    if (center - width < 0.02)
        throw ConstraintError("interior bump must vanish near the vertex");
}

Competitor make_competitor(const PerturbationSpec& spec, const DomainParams& params,
                           std::size_t n_vertices) {
    spec.validate(params);
    if (n_vertices < 16) throw InvalidInputError("competitor needs at least 16 vertices");

    const std::size_t n_arc = n_vertices;
    // Cone volume at matched resolution, so the matching difference is clean.
    PerturbationSpec cone_spec;  // zero amplitudes
    const BuiltCurve cone = build_curve(cone_spec, 0.0, params, n_vertices);
    const double target = detail::loop_weighted_volume(build_loop(cone, params, n_arc));

    double shift = 0.0;
    if (spec.volume_match) {
        auto volume_excess = [&](double s) {
            const BuiltCurve c = build_curve(spec, s, params, n_vertices);
            return detail::loop_weighted_volume(build_loop(c, params, n_arc)) - target;
        };
        // Volume decreases as the shear pushes the curve toward the u-axis.
        numerics::Bracket bracket{-0.12, 0.12, 1e-13};
        shift = numerics::find_root(volume_excess, bracket);
    }

    const BuiltCurve built = build_curve(spec, shift, params, n_vertices);
    Competitor out;
    out.curve = GeneratingCurve::from_points(built.points, Side::below_diagonal);
    out.curve.validate();
    out.region.loop = build_loop(built, params, n_arc);
    out.volume = detail::loop_weighted_volume(out.region.loop);
    out.cone_volume = target;
    out.boundary_theta = built.theta_end;
    out.boundary_distance = cross_section_distance(built.theta_end);
    out.match_shift = shift;

    if (spec.volume_match &&
        std::abs(out.volume - target) > 1e-8 * std::abs(target))
        throw ConvergenceError("volume matching missed the relative tolerance",
                               std::abs(out.volume - target) / std::abs(target));
    return out;
}

}  // namespace conecal::geometry
