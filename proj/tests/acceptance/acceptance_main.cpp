// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion pins its tolerance in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "conecal/calibration/checks.hpp"
#include "conecal/calibration/field.hpp"
#include "conecal/geometry/competitor.hpp"
#include "conecal/geometry/curve.hpp"
#include "conecal/spectral/compact_analog.hpp"
#include "conecal/spectral/radial.hpp"
#include "conecal/spectral/sweep.hpp"
#include "conecal/spectral/zonal.hpp"

using namespace conecal;
namespace spec = conecal::spectral;
namespace geom = conecal::geometry;
namespace calib = conecal::calibration;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!ok) detail << (detail.tellp() > 0 ? "; " : "") << "FAILED: " << what;
    }
    void note(const std::string& msg) {
        detail << (detail.tellp() > 0 ? "; " : "") << msg;
    }
};

double eigen_z(double K, double Z, double step,
               spec::BoundaryConditionKind bc = spec::BoundaryConditionKind::robin) {
    spec::RadialProblem p;
    p.K = K;
    p.Z = Z;
    p.step = step;
    p.boundary = bc;
    return spec::radial_eigensolve_z(p).eigenvalue;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

// 1. Neumann case: delta1(K=1) vanishes.
Outcome criterion1() {
    Outcome out;
    const double val = eigen_z(1.0, 80.0, 0.005);
    out.note("delta1 = " + fmt(val));
    out.require(val >= -1e-3 && val <= 1e-3, "delta1 outside [-1e-3, 1e-3]");
    return out;
}

// 2. Subcritical formula 25/4 - (6-K)^2/4.
Outcome criterion2() {
    Outcome out;
    double worst = 0.0;
    for (double K : {2.0, 3.0, 4.0, 5.0, 5.5}) {
        const double gap = std::abs(eigen_z(K, 100.0, 0.005) - spec::delta1_closed(K));
        worst = std::max(worst, gap);
        out.require(gap <= 1e-3, "K = " + std::to_string(K) + " off by " + fmt(gap));
    }
    out.note("max |fd - closed| = " + fmt(worst));
    return out;
}

// 3. Saturation at 25/4 for K >= 6, decreasing in the truncation depth.
Outcome criterion3() {
    Outcome out;
    for (double K : {6.0, 8.0, 20.0}) {
        const double v200 = eigen_z(K, 200.0, 0.005);
        const double v400 = eigen_z(K, 400.0, 0.005);
        out.require(v200 >= 6.25 - 1e-4, "K = " + std::to_string(K) + " below the floor");
        out.require(std::abs(v200 - 6.25) <= 1e-2,
                    "K = " + std::to_string(K) + " outside the 1e-2 band");
        out.require(v400 < v200 && v400 >= 6.25 - 1e-4,
                    "K = " + std::to_string(K) + " not decreasing toward 25/4");
        if (K == 8.0)
            out.note("K = 8: Z = 200 -> " + fmt(v200 - 6.25) + ", Z = 400 -> " +
                     fmt(v400 - 6.25) + " above 25/4");
    }
    return out;
}

// 4. Dirichlet consistency: the same saturated value.
Outcome criterion4() {
    Outcome out;
    const double val =
        eigen_z(8.0, 200.0, 0.005, spec::BoundaryConditionKind::dirichlet);
    out.note("delta1 = 6.25 + " + fmt(val - 6.25));
    out.require(std::abs(val - 6.25) <= 1e-2, "Dirichlet value off 25/4 by > 1e-2");
    return out;
}

// 5. Stability threshold at K = 5.
Outcome criterion5() {
    Outcome out;
    const double closed = spec::stability_threshold();
    out.require(std::abs(closed - 5.0) <= 1e-12, "closed-form root not 5");
    spec::RadialProblem templ;
    templ.Z = 100.0;
    templ.step = 0.01;
    const double fd = spec::stability_threshold_fd(templ);
    out.note("fd root = " + std::to_string(fd));
    out.require(std::abs(fd - 5.0) <= 0.02, "fd bisection outside 5 +- 0.02");
    return out;
}

// 6. Principal eigenvalue 1/4 via the second-variation quotient.
Outcome criterion6() {
    Outcome out;
    spec::RadialProblem p;
    p.K = 8.0;
    p.Z = 140.0;
    p.step = 0.004;
    p.coordinate = spec::RadialCoordinate::t_form;
    const spec::EigenResult r = spec::radial_eigensolve_t(p);
    const double quotient =
        spec::second_variation_quotient(r.eigenfunction, r.grid, {0, 0}, p.K);
    out.note("quotient = 0.25 + " + fmt(quotient - 0.25));
    out.require(std::abs(quotient - 0.25) <= 1e-3, "quotient off 1/4 by > 1e-3");
    return out;
}

// 7. Coordinate-form oracle equivalence on matched grids.
Outcome criterion7() {
    Outcome out;
    double worst = 0.0;
    for (double K : {1.0, 4.0, 8.0}) {
        spec::RadialProblem p;
        p.K = K;
        p.Z = 100.0;
        p.step = 0.005;
        const double vz = spec::radial_eigensolve_z(p).eigenvalue;
        p.coordinate = spec::RadialCoordinate::t_form;
        const double vt = spec::radial_eigensolve_t(p).eigenvalue;
        worst = std::max(worst, std::abs(vt - vz));
        out.require(std::abs(vt - vz) <= 1e-6,
                    "K = " + std::to_string(K) + " gap " + fmt(std::abs(vt - vz)));
    }
    out.note("max |t - z| = " + fmt(worst));
    return out;
}

// 8. Compact-domain analog asymptotics.
Outcome criterion8() {
    Outcome out;
    const double pi2 = kPi * kPi;
    double sx2 = 0, sx3 = 0, sx4 = 0, sxy = 0, sx2y = 0;
    for (double kappa : {25.0, 50.0, 100.0, 200.0}) {
        const double delta = spec::compact_analog_eigenvalue(kappa);
        const double dev = std::abs(delta - pi2 * (1.0 + 2.0 / kappa));
        out.require(dev <= 5.0 * pi2 / (kappa * kappa),
                    "kappa = " + std::to_string(kappa) + " deviation " + fmt(dev));
        const double x = 1.0 / kappa, y = delta / pi2 - 1.0;
        sx2 += x * x;
        sx3 += x * x * x;
        sx4 += x * x * x * x;
        sxy += x * y;
        sx2y += x * x * y;
    }
    const double det = sx2 * sx4 - sx3 * sx3;
    const double a = (sxy * sx4 - sx2y * sx3) / det;
    out.note("fitted first-order coefficient = " + std::to_string(a));
    out.require(a >= 1.9 && a <= 2.1, "fitted coefficient outside [1.9, 2.1]");
    return out;
}

// 9. Angular spectrum: zonal oracle and the closed form.
Outcome criterion9() {
    Outcome out;
    const auto vals = spec::zonal_sphere_spectrum(6, 2000);
    double worst = 0.0;
    for (int k = 0; k <= 5; ++k) {
        const double gap = std::abs(vals[k] - k * (k + 2));
        worst = std::max(worst, gap);
        out.require(gap <= 1e-3, "mode k = " + std::to_string(k) + " off by " + fmt(gap));
    }
    out.note("max zonal error = " + fmt(worst));
    out.require(spec::angular_eigenvalue({0, 0}) == -6.0,
                "principal angular eigenvalue is not -6");
    return out;
}

// 10. Calibration field: leaf reach, monotone approach, divergence residual.
Outcome criterion10(const calib::CalibrationField& field) {
    Outcome out;
    const calib::Leaf& leaf = field.above;
    out.require(leaf.max_radius() >= 2.0, "base leaf does not reach radius 2");

    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < leaf.size(); ++i) {
        const double gap = leaf.v[i] - leaf.u[i];
        monotone = monotone && gap > 0.0 && gap <= prev + 1e-14;
        prev = gap;
    }
    out.require(monotone, "approach to the diagonal is not monotone");

    const double h = 1e-3;
    double max_res = 0.0;
    std::vector<double> ratios;
    for (int i = 1; i <= 6; ++i) {
        for (int j = 1; j <= 6; ++j) {
            const geom::Vec2 p{0.22 + 0.27 * i, 0.15 + 0.25 * j};
            if (p.norm() > 1.95 || std::abs(p.u - p.v) < 0.05) continue;
            const double r1 = calib::divergence_residual(p, field, h);
            const double r2 = calib::divergence_residual(p, field, 2.0 * h);
            max_res = std::max(max_res, r1);
            if (r1 > 1e-12) ratios.push_back(r2 / r1);
        }
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
    out.note("max residual = " + fmt(max_res) + ", refinement ratio = " +
             std::to_string(median));
    out.require(max_res <= 1e-3, "divergence residual above 1e-3");
    out.require(median >= 3.5 && median <= 4.5, "refinement ratio outside 4 +- 0.5");
    return out;
}

// 11. Gauss-Green identity on the undeformed ball.
Outcome criterion11(const calib::CalibrationField& field) {
    Outcome out;
    geom::DomainParams ball;
    ball.K = 0.0;
    const auto region = geom::reduced_cone_region(ball, 2048);
    const auto r = calib::gauss_green_check(region, ball, field);
    out.note("area = " + std::to_string(r.area) + ", flux = " + std::to_string(r.flux) +
             ", rel = " + fmt(r.discrepancy_rel));
    out.require(std::abs(r.area - std::pow(kPi, 4) / 14.0) <= 1e-12,
                "cone area is not pi^4/14");
    out.require(r.discrepancy_rel <= 1e-4, "flux disagrees beyond 1e-4 relative");
    return out;
}

// 12. Boundary sign band, with the undeformed control.
Outcome criterion12(const calib::CalibrationField& field) {
    Outcome out;
    geom::DomainParams params;  // K = 8, upsilon = 0.1
    const auto band = calib::sign_band_check(params, field, 1000, 0.5 * params.upsilon);
    out.require(band.trench_abs <= 1e-6, "X.n at the trace above 1e-6");
    bool signs = true;
    for (const auto& s : band.samples)
        signs = signs && (s.side < 0 ? s.x_dot_n > 0.0 : s.x_dot_n < 0.0);
    out.require(signs && band.pass, "strict signs fail inside (0, upsilon/2]");
    out.note("d_safe measured = " + std::to_string(band.d_safe_measured));

    geom::DomainParams ball;
    ball.K = 0.0;
    const auto control = calib::sign_band_check(ball, field, 1000, 0.5 * ball.upsilon);
    out.require(!control.pass, "undeformed control unexpectedly passes");
    return out;
}

// 13. Minimality inequality for seeded volume-matched competitors.
Outcome criterion13(const calib::CalibrationField& field) {
    Outcome out;
    geom::DomainParams params;

    geom::PerturbationSpec cone;
    const auto cone_comp = geom::make_competitor(cone, params, 2048);
    const auto cone_check = calib::minimality_check(cone_comp, params, field);
    out.require(std::abs(cone_check.slack) <= 1e-6 * cone_check.lhs,
                "cone slack above 1e-6");

    double min_slack = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 1001; seed <= 1020; ++seed) {
        const auto spec_pert = geom::PerturbationSpec::random(seed, params);
        const auto comp = geom::make_competitor(spec_pert, params, 2048);
        const auto check = calib::minimality_check(comp, params, field);
        min_slack = std::min(min_slack, check.slack);
        out.require(check.in_regime,
                    "seed " + std::to_string(seed) + " left the safe band");
        out.require(check.slack > 0.0,
                    "seed " + std::to_string(seed) + " has nonpositive slack");
        out.require(std::abs(comp.volume - comp.cone_volume) <=
                        1e-8 * comp.cone_volume,
                    "seed " + std::to_string(seed) + " volume not matched");
    }
    out.note("min slack over 20 competitors = " + fmt(min_slack));
    return out;
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const calib::CalibrationField field = calib::CalibrationField::build({});

    struct Item {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Item> items = {
        {1, "Neumann case delta1(K=1) = 0", criterion1},
        {2, "subcritical formula 25/4 - (6-K)^2/4", criterion2},
        {3, "saturation at 25/4 for K >= 6", criterion3},
        {4, "Dirichlet consistency", criterion4},
        {5, "stability threshold K = 5", criterion5},
        {6, "principal eigenvalue 1/4 at K = 8", criterion6},
        {7, "t-form / z-form oracle equivalence", criterion7},
        {8, "compact analog asymptotics", criterion8},
        {9, "angular spectrum", criterion9},
        {10, "calibration field divergence", [&] { return criterion10(field); }},
        {11, "Gauss-Green identity", [&] { return criterion11(field); }},
        {12, "boundary sign band", [&] { return criterion12(field); }},
        {13, "minimality against competitors", [&] { return criterion13(field); }},
    };

    int failures = 0;
    for (const auto& item : items) {
        Outcome outcome;
        std::string error;
        try {
            outcome = item.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.note(std::string("exception: ") + e.what());
        }
        if (!outcome.pass) ++failures;
        std::printf("%s  criterion %2d: %s%s%s\n", outcome.pass ? "PASS" : "FAIL",
                    item.id, item.name, outcome.detail.tellp() > 0 ? " -- " : "",
                    outcome.detail.str().c_str());
        std::fflush(stdout);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/%zu criteria passed in %.1f s\n",
                static_cast<int>(items.size()) - failures, items.size(), seconds);
    return failures == 0 ? 0 : 1;
}
