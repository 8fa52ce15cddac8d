#include "conecal/calibration/checks.hpp"

#include <cmath>
#include <numbers>

#include "conecal/errors.hpp"
#include "conecal/numerics/quadrature.hpp"

namespace conecal::calibration {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kOrbitWeight = 4.0 * kPi2 * kPi2;  // (2 pi^2)^2

double cubed(double x) { return x * x * x; }

// X.n times the weighted boundary line element at angle theta.
double boundary_flux_integrand(double theta, const DomainParams& params,
                               const CalibrationField& field) {
    const geometry::Vec2 p = geometry::boundary_point(theta, params);
    const geometry::Vec2 n = geometry::boundary_normal(theta, params);
    const geometry::Vec2 X = field_X(p, field);
    const double rho = geometry::boundary_radius(theta, params);
    const double drho = geometry::boundary_radius_derivative(theta, params);
    const double line = std::sqrt(rho * rho + drho * drho);
    return X.dot(n) * cubed(p.u) * cubed(p.v) * line;
}

double boundary_flux(double theta_lo, double theta_hi, const DomainParams& params,
                     const CalibrationField& field, double quad_tol) {
    if (theta_hi == theta_lo) return 0.0;
    auto f = [&](double theta) { return boundary_flux_integrand(theta, params, field); };
    return kOrbitWeight * numerics::adaptive_simpson(f, theta_lo, theta_hi, quad_tol);
}

// 4-point Gauss-Legendre on [0, 1].
constexpr double kGaussX[4] = {0.5 - 0.43056815579702629, 0.5 - 0.16999052179242816,
                               0.5 + 0.16999052179242816, 0.5 + 0.43056815579702629};
constexpr double kGaussW[4] = {0.17392742256872692, 0.32607257743127305,
                               0.32607257743127305, 0.17392742256872692};

struct CurveFlux {
    double x_dot_nu = 0.0;  // weighted integral of X.nu along the curve
    double defect = 0.0;    // weighted integral of (1 - X.nu)
};

CurveFlux curve_flux(const geometry::GeneratingCurve& curve,
                     const CalibrationField& field) {
    CurveFlux out;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const geometry::Vec2 a = curve.vertices[i], b = curve.vertices[i + 1];
        const geometry::Vec2 d = b - a;
        const double len = d.norm();
        // Left normal of the outward-running curve: out of the enclosed N'.
        const geometry::Vec2 nu{-d.v / len, d.u / len};
        double seg_flux = 0.0, seg_defect = 0.0;
        for (int q = 0; q < 4; ++q) {
            const geometry::Vec2 p = a + kGaussX[q] * d;
            const double w = cubed(p.u) * cubed(p.v);
            const double xn = field_X(p, field).dot(nu);
            seg_flux += kGaussW[q] * xn * w;
            seg_defect += kGaussW[q] * (1.0 - xn) * w;
        }
        out.x_dot_nu += seg_flux * len;
        out.defect += seg_defect * len;
    }
    out.x_dot_nu *= kOrbitWeight;
    out.defect *= kOrbitWeight;
    return out;
}

}  // namespace

double safe_band(const DomainParams& params) {
    return 0.6 * geometry::bump_crest(params);
}

GaussGreenResult gauss_green_check(const ReducedRegion& region, const DomainParams& params,
                                   const CalibrationField& field, double quad_tol) {
    GaussGreenResult result;
    if (region.loop.size() < 3) return result;
    params.validate();

    // The closing edge of the region loop is the cone piece from the trace
    // point back to the vertex.
    const geometry::GeneratingCurve cone = geometry::GeneratingCurve::from_points(
        {region.loop.front(), region.loop.back()}, geometry::Side::below_diagonal);
    result.area = weighted_area(cone);
    result.flux = -boundary_flux(0.0, kQuarterPi, params, field, quad_tol);
    result.discrepancy_rel = std::abs(result.area - result.flux) /
                             std::max(result.area, 1e-300);
    return result;
}

SignBandReport sign_band_check(const DomainParams& params, const CalibrationField& field,
                               int n_samples, double d_claim) {
    params.validate();
    if (n_samples < 1) throw InvalidInputError("need at least one sample per side");
    if (!(params.K > 0.0) && d_claim < 0.0)
        throw PreconditionError("the sign band is only claimed for K > 0");

    SignBandReport report;
    report.d_claim = d_claim > 0.0 ? d_claim : safe_band(params);

    {
        const geometry::Vec2 p = geometry::boundary_point(kQuarterPi, params);
        const geometry::Vec2 n = geometry::boundary_normal(kQuarterPi, params);
        report.trench_abs = std::abs(field_X(p, field).dot(n));
    }

    auto sample_at = [&](double d, int side) {
        SignSample s;
        s.d = d;
        s.side = side;
        s.theta = kQuarterPi + side * 2.0 * std::asin(0.5 * d);
        const geometry::Vec2 p = geometry::boundary_point(s.theta, params);
        const geometry::Vec2 n = geometry::boundary_normal(s.theta, params);
        s.x_dot_n = field_X(p, field).dot(n);
        return s;
    };
    auto strict_ok = [](const SignSample& s) {
        return s.side < 0 ? s.x_dot_n > 0.0 : s.x_dot_n < 0.0;
    };

    // Sampled band: min(claim, upsilon/2) on each side.
    const double band = std::min(report.d_claim, 0.5 * params.upsilon);
    bool samples_ok = true;
    for (int j = 1; j <= n_samples; ++j) {
        const double d = band * static_cast<double>(j) / n_samples;
        for (int side : {-1, +1}) {
            SignSample s = sample_at(d, side);
            if (!strict_ok(s) && !report.first_violation) report.first_violation = s;
            samples_ok = samples_ok && strict_ok(s);
            report.samples.push_back(s);
        }
    }

    // Scan outward for the largest distance with strict signs on both sides.
    constexpr int kScan = 512;
    const double d_max = 2.0 * params.upsilon * 0.999;
    report.d_safe_measured = 0.0;
    for (int j = 1; j <= kScan; ++j) {
        const double d = d_max * static_cast<double>(j) / kScan;
        if (!strict_ok(sample_at(d, -1)) || !strict_ok(sample_at(d, +1))) break;
        report.d_safe_measured = d;
    }

    report.pass = report.trench_abs <= 1e-6 && samples_ok &&
                  report.d_safe_measured >= report.d_claim * (1.0 - 1e-3);
    if (!report.pass && !report.first_violation && !report.samples.empty()) {
        // Claim band not covered by the scan; report the edge of the scan.
        if (report.d_safe_measured < report.d_claim)
            report.first_violation = sample_at(
                std::min(d_max, report.d_safe_measured + d_max / kScan), -1);
    }
    return report;
}

MinimalityReport minimality_check(const Competitor& competitor, const DomainParams& params,
                                  const CalibrationField& field) {
    params.validate();
    MinimalityReport report;

    report.lhs = weighted_area(competitor.curve);
    report.cone_area = weighted_area(geometry::cone_segment(1.0));
    report.in_regime = competitor.boundary_distance <= safe_band(params) &&
                       competitor.boundary_distance <= 0.5 * params.upsilon + 1e-12;

    const double theta_end = competitor.boundary_theta;
    const double quad_tol = 1e-12;
    if (theta_end < kQuarterPi) {
        report.flux_n_minus_np = boundary_flux(theta_end, kQuarterPi, params, field, quad_tol);
    } else if (theta_end > kQuarterPi) {
        report.flux_np_minus_n = boundary_flux(kQuarterPi, theta_end, params, field, quad_tol);
    }

    const double rhs = report.cone_area + report.flux_n_minus_np - report.flux_np_minus_n;
    report.slack = report.lhs - rhs;
    report.inequality_ok = report.slack >= -report.tolerance * report.lhs;

    const CurveFlux cf = curve_flux(competitor.curve, field);
    report.defect = cf.defect;
    const double route_b = -boundary_flux(0.0, theta_end, params, field, quad_tol);
    report.two_route_residual = std::abs(cf.x_dot_nu - route_b);
    report.two_route_ok = report.two_route_residual <= 1e-4 * (1.0 + std::abs(route_b));
    return report;
}

}  // namespace conecal::calibration
