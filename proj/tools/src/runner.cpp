#include "conecal_cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "conecal/calibration/checks.hpp"
#include "conecal/calibration/field.hpp"
#include "conecal/errors.hpp"
#include "conecal/geometry/competitor.hpp"
#include "conecal/spectral/compact_analog.hpp"
#include "conecal/spectral/sweep.hpp"
#include "conecal_cli/csv.hpp"

namespace conecal::cli {

namespace {

using nlohmann::ordered_json;
using OutputFiles = std::vector<std::pair<std::string, std::string>>;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

std::string yesno(bool b) { return b ? "true" : "false"; }

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = command_name(cfg.command);
    j["domain"] = {{"K", cfg.domain.K}, {"upsilon", cfg.domain.upsilon}};
    j["solver"] = {
        {"Z", cfg.solver.Z},
        {"step", cfg.solver.step},
        {"coordinate",
         cfg.solver.coordinate == spectral::RadialCoordinate::t_form ? "t" : "z"},
        {"boundary",
         cfg.solver.boundary == spectral::BoundaryConditionKind::dirichlet
             ? "dirichlet"
             : "robin"}};
    j["sweep"] = {{"K_values", cfg.K_values}};
    j["compact"] = {{"kappa_values", cfg.kappa_values}};
    j["calibrate"] = {{"samples_per_side", cfg.samples_per_side},
                      {"stencil_h", cfg.stencil_h},
                      {"leaf_tol", cfg.leaf_tol}};
    j["compare"] = {{"seeds", cfg.seeds},
                    {"vertices", cfg.competitor_vertices},
                    {"volume_match", cfg.volume_match}};
    return j;
}

void run_spectrum(const RunConfig& cfg, Report& report, OutputFiles& files) {
    Timer timer;
    spectral::RadialProblem p = cfg.solver;
    p.K = cfg.domain.K;
    p.coordinate = spectral::RadialCoordinate::z_form;
    const spectral::EigenResult rz = spectral::radial_eigensolve_z(p);

    bool have_t = p.Z <= 140.0;
    spectral::EigenResult rt;
    if (have_t) {
        spectral::RadialProblem pt = p;
        pt.coordinate = spectral::RadialCoordinate::t_form;
        rt = spectral::radial_eigensolve_t(pt);
    }
    report.timings_ms.emplace_back("solve", timer.ms());

    const bool dirichlet = p.boundary == spectral::BoundaryConditionKind::dirichlet;
    const double closed = dirichlet ? 25.0 / 4.0 : spectral::delta1_closed(p.K);
    const double mu_fd = -6.0 + rz.eigenvalue;
    const double tz_gap = have_t ? std::abs(rt.eigenvalue - rz.eigenvalue) : 0.0;

    ordered_json res;
    res["delta1_closed"] = closed;
    res["delta1_fd_z"] = rz.eigenvalue;
    if (have_t) res["delta1_fd_t"] = rt.eigenvalue;
    res["mu1_closed"] = spectral::mu1_closed(p.K);
    res["mu1_fd"] = mu_fd;
    res["residual_z"] = rz.residual;
    if (have_t) {
        res["residual_t"] = rt.residual;
        res["tz_gap"] = tz_gap;
    }
    report.results = res;

    report.checks.push_back({"residual", rz.residual <= 1e-8,
                             "relative residual " + format_real(rz.residual)});
    if (have_t)
        report.checks.push_back(
            {"coordinate-equivalence", tz_gap <= 1e-6,
             "|t-form - z-form| = " + format_real(tz_gap)});
    if (!dirichlet && p.K < 6.0) {
        const double tol = std::max(1e-3, 100.0 * p.step * p.step);
        report.checks.push_back(
            {"closed-form-agreement", std::abs(rz.eigenvalue - closed) <= tol,
             "|fd - closed| = " + format_real(std::abs(rz.eigenvalue - closed))});
    } else {
        const double upper =
            std::max(1e-2, 10.0 * std::pow(std::numbers::pi / p.Z, 2));
        report.checks.push_back(
            {"saturation", rz.eigenvalue >= 6.25 - 1e-4 &&
                               rz.eigenvalue - 6.25 <= upper,
             "fd - 25/4 = " + format_real(rz.eigenvalue - 6.25)});
    }

    std::vector<std::string> header = {"K",          "Z",          "step",
                                       "delta1_closed", "delta1_fd_z", "delta1_fd_t",
                                       "mu1_closed", "mu1_fd",     "residual_z",
                                       "residual_t", "tz_gap"};
    std::vector<std::vector<std::string>> rows;
    rows.push_back({format_real(p.K), format_real(p.Z), format_real(p.step),
                    format_real(closed), format_real(rz.eigenvalue),
                    have_t ? format_real(rt.eigenvalue) : "",
                    format_real(spectral::mu1_closed(p.K)), format_real(mu_fd),
                    format_real(rz.residual), have_t ? format_real(rt.residual) : "",
                    have_t ? format_real(tz_gap) : ""});
    files.emplace_back("spectrum.csv", render_csv(header, rows));
}

void run_sweep(const RunConfig& cfg, Report& report, OutputFiles& files) {
    Timer timer;
    spectral::RadialProblem p = cfg.solver;
    const spectral::SweepReport sweep = spectral::stability_sweep(cfg.K_values, p);
    report.timings_ms.emplace_back("sweep", timer.ms());

    ordered_json rows_json = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    bool all_ok = true, flags_ok = true, saturation_ok = true;
    for (const auto& row : sweep.rows) {
        all_ok = all_ok && row.solver_ok;
        if (row.solver_ok) {
            const double mu_closed = spectral::mu1_closed(row.K);
            if (mu_closed > 1e-3 && !row.stable) flags_ok = false;
            if (mu_closed < -1e-3 && row.stable) flags_ok = false;
            if (row.K >= 6.0 && row.delta1_fd < 6.25 - 1e-4) saturation_ok = false;
        }
        ordered_json rj;
        rj["K"] = row.K;
        rj["delta1_closed"] = row.delta1_closed;
        rj["delta1_fd"] = row.delta1_fd;
        rj["mu1"] = row.mu1;
        rj["stable"] = row.stable;
        rj["discrepancy"] = row.discrepancy;
        if (!row.solver_ok) rj["error"] = row.error;
        rows_json.push_back(rj);
        rows.push_back({format_real(row.K), format_real(row.delta1_closed),
                        format_real(row.delta1_fd), format_real(row.mu1),
                        yesno(row.stable), format_real(row.discrepancy)});
    }
    ordered_json res;
    res["rows"] = rows_json;
    res["max_discrepancy_subcritical"] = sweep.max_discrepancy_subcritical;
    res["stability_margin"] = sweep.stability_margin;
    report.results = res;

    const double tol = std::max(1e-3, 100.0 * p.step * p.step);
    report.checks.push_back({"rows-solved", all_ok, ""});
    report.checks.push_back(
        {"subcritical-agreement", sweep.max_discrepancy_subcritical <= tol,
         "max |fd - closed| over K < 6: " +
             format_real(sweep.max_discrepancy_subcritical)});
    report.checks.push_back({"stability-flags", flags_ok,
                             "flags against the closed form away from K = 5"});
    report.checks.push_back({"saturation-floor", saturation_ok,
                             "fd >= 25/4 - 1e-4 for K >= 6"});

    files.emplace_back("sweep.csv",
                       render_csv({"K", "delta1_closed", "delta1_fd", "mu1", "stable",
                                   "discrepancy"},
                                  rows));
}

void run_compact(const RunConfig& cfg, Report& report, OutputFiles& files) {
    Timer timer;
    const double pi2 = std::numbers::pi * std::numbers::pi;

    ordered_json rows_json = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    bool asym_ok = true;
    double sx2 = 0, sx3 = 0, sx4 = 0, sxy = 0, sx2y = 0;
    int fit_points = 0;
    for (double kappa : cfg.kappa_values) {
        const double delta = spectral::compact_analog_eigenvalue(kappa);
        const double asym = pi2 * (1.0 + 2.0 / kappa);
        const double dev = std::abs(delta - asym);
        const double bound = 5.0 * pi2 / (kappa * kappa);
        if (std::abs(kappa) >= 25.0 && dev > bound) asym_ok = false;
        if (kappa > 0.0) {
            const double x = 1.0 / kappa, y = delta / pi2 - 1.0;
            sx2 += x * x;
            sx3 += x * x * x;
            sx4 += x * x * x * x;
            sxy += x * y;
            sx2y += x * x * y;
            ++fit_points;
        }
        ordered_json rj;
        rj["kappa"] = kappa;
        rj["delta1"] = delta;
        rj["asymptotic"] = asym;
        rj["deviation"] = dev;
        rj["bound"] = bound;
        rows_json.push_back(rj);
        rows.push_back({format_real(kappa), format_real(delta), format_real(asym),
                        format_real(dev), format_real(bound)});
    }
    report.timings_ms.emplace_back("compact", timer.ms());

    ordered_json res;
    res["rows"] = rows_json;
    report.checks.push_back({"asymptotic-band", asym_ok,
                             "|delta1 - pi^2 (1 + 2/kappa)| <= 5 pi^2 / kappa^2"});
    if (fit_points >= 3) {
        // Two-term fit delta1/pi^2 - 1 = a/kappa + b/kappa^2.
        const double det = sx2 * sx4 - sx3 * sx3;
        const double a = (sxy * sx4 - sx2y * sx3) / det;
        const double b = (sx2 * sx2y - sx3 * sxy) / det;
        res["fit_first_order"] = a;
        res["fit_second_order"] = b;
        report.checks.push_back({"first-order-coefficient", a >= 1.9 && a <= 2.1,
                                 "fitted coefficient " + format_real(a)});
    }
    report.results = res;

    files.emplace_back("compact_analog.csv",
                       render_csv({"kappa", "delta1", "asymptotic", "deviation",
                                   "bound"},
                                  rows));
}

void run_calibrate(const RunConfig& cfg, Report& report, OutputFiles& files,
                   bool verbose) {
    Timer build_timer;
    const calibration::CalibrationField field =
        calibration::CalibrationField::build({cfg.leaf_tol, 1000.0});
    report.timings_ms.emplace_back("field-build", build_timer.ms());
    if (verbose)
        std::fprintf(stderr, "field built: %zu + %zu leaf nodes\n",
                     field.above.size(), field.below.size());

    ordered_json res;

    // Leaf diagnostics.
    {
        const calibration::Leaf& leaf = field.above;
        bool monotone = true;
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < leaf.size(); ++i) {
            const double gap = (leaf.v[i] - leaf.u[i]) / std::numbers::sqrt2;
            if (gap > prev + 1e-14) monotone = false;
            prev = gap;
        }
        const auto p1 = leaf.at_radius(1.0), p2 = leaf.at_radius(2.0);
        const double d1 = (p1.p.v - p1.p.u) / std::numbers::sqrt2;
        const double d2 = (p2.p.v - p2.p.u) / std::numbers::sqrt2;
        res["leaf"] = {{"nodes", leaf.size()},
                       {"max_radius", leaf.max_radius()},
                       {"distance_at_r1", d1},
                       {"distance_at_r2", d2}};
        report.checks.push_back({"leaf-extent", leaf.max_radius() >= 2.0, ""});
        report.checks.push_back(
            {"leaf-monotone-approach", monotone && d2 > 0.0 && d2 < d1,
             "distance " + format_real(d1) + " -> " + format_real(d2)});
    }

    // Divergence residual study at h and 2h.
    {
        Timer timer;
        const double h = cfg.stencil_h;
        double max_h = 0.0, max_2h = 0.0;
        std::vector<double> ratios;
        for (int i = 1; i <= 6; ++i) {
            for (int j = 1; j <= 6; ++j) {
                const geometry::Vec2 p{0.22 + 0.27 * i, 0.15 + 0.25 * j};
                if (p.norm() > 1.95 || std::abs(p.u - p.v) < 0.05) continue;
                const double r1 = calibration::divergence_residual(p, field, h);
                const double r2 = calibration::divergence_residual(p, field, 2.0 * h);
                max_h = std::max(max_h, r1);
                max_2h = std::max(max_2h, r2);
                if (r1 > 1e-12) ratios.push_back(r2 / r1);
            }
        }
        double median_ratio = 0.0;
        if (!ratios.empty()) {
            std::sort(ratios.begin(), ratios.end());
            median_ratio = ratios[ratios.size() / 2];
        }
        report.timings_ms.emplace_back("divergence", timer.ms());
        res["divergence"] = {{"stencil_h", h},
                             {"max_residual", max_h},
                             {"max_residual_2h", max_2h},
                             {"median_ratio", median_ratio}};
        report.checks.push_back({"divergence-residual", max_h <= 1e-3,
                                 "max " + format_real(max_h)});
        report.checks.push_back(
            {"divergence-order", median_ratio >= 3.5 && median_ratio <= 4.5,
             "median refinement ratio " + format_real(median_ratio)});
    }

    // Gauss-Green identity.
    {
        Timer timer;
        const auto region = geometry::reduced_cone_region(cfg.domain, 2048);
        const auto gg = calibration::gauss_green_check(region, cfg.domain, field);
        report.timings_ms.emplace_back("gauss-green", timer.ms());
        res["gauss_green"] = {{"area", gg.area},
                              {"flux", gg.flux},
                              {"discrepancy_rel", gg.discrepancy_rel}};
        report.checks.push_back({"gauss-green", gg.discrepancy_rel <= 1e-4,
                                 "relative discrepancy " +
                                     format_real(gg.discrepancy_rel)});
    }

    // Boundary sign band.
    std::vector<std::vector<std::string>> band_rows;
    try {
        Timer timer;
        const auto band =
            calibration::sign_band_check(cfg.domain, field, cfg.samples_per_side);
        report.timings_ms.emplace_back("sign-band", timer.ms());
        res["sign_band"] = {{"trench_abs", band.trench_abs},
                            {"d_claim", band.d_claim},
                            {"d_safe_measured", band.d_safe_measured}};
        report.checks.push_back(
            {"sign-band", band.pass,
             "d_safe " + format_real(band.d_safe_measured) + " vs claim " +
                 format_real(band.d_claim)});
        for (const auto& s : band.samples)
            band_rows.push_back({std::to_string(s.side), format_real(s.theta),
                                 format_real(s.d), format_real(s.x_dot_n)});
    } catch (const Error& e) {
        report.checks.push_back({"sign-band", false, e.what()});
    }
    report.results = res;

    files.emplace_back("signband.csv",
                       render_csv({"side", "theta", "d", "x_dot_n"}, band_rows));
}

void run_compare(const RunConfig& cfg, Report& report, OutputFiles& files,
                 bool verbose) {
    Timer build_timer;
    const calibration::CalibrationField field =
        calibration::CalibrationField::build({cfg.leaf_tol, 1000.0});
    report.timings_ms.emplace_back("field-build", build_timer.ms());

    struct Row {
        std::uint64_t seed;
        geometry::PerturbationSpec spec;
        geometry::Competitor competitor;
        calibration::MinimalityReport check;
    };
    Timer timer;
    std::vector<Row> all;
    {
        geometry::PerturbationSpec cone;
        cone.volume_match = false;
        Row row{0, cone,
                geometry::make_competitor(cone, cfg.domain, cfg.competitor_vertices),
                {}};
        row.check = calibration::minimality_check(row.competitor, cfg.domain, field);
        all.push_back(std::move(row));
    }
    for (std::uint64_t seed : cfg.seeds) {
        geometry::PerturbationSpec spec =
            geometry::PerturbationSpec::random(seed, cfg.domain);
        spec.volume_match = cfg.volume_match;
        Row row{seed, spec,
                geometry::make_competitor(spec, cfg.domain, cfg.competitor_vertices),
                {}};
        row.check = calibration::minimality_check(row.competitor, cfg.domain, field);
        if (verbose)
            std::fprintf(stderr, "seed %llu: slack %.3e\n",
                         static_cast<unsigned long long>(seed), row.check.slack);
        all.push_back(std::move(row));
    }
    report.timings_ms.emplace_back("competitors", timer.ms());

    ordered_json rows_json = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    bool cone_ok = false, slack_ok = true, volume_ok = true, route_ok = true,
         regime_ok = true;
    for (const auto& row : all) {
        const auto& c = row.check;
        const double vol_rel = std::abs(row.competitor.volume -
                                        row.competitor.cone_volume) /
                               row.competitor.cone_volume;
        if (row.seed == 0) {
            cone_ok = std::abs(c.slack) <= c.tolerance * c.lhs && c.defect <= 1e-6;
        } else {
            slack_ok = slack_ok && c.in_regime && c.inequality_ok && c.slack > 0.0;
            if (row.spec.volume_match) volume_ok = volume_ok && vol_rel <= 1e-8;
            regime_ok = regime_ok && c.in_regime;
        }
        route_ok = route_ok && c.two_route_ok;

        ordered_json rj;
        rj["seed"] = row.seed;
        rj["amplitude"] = row.spec.amplitude;
        rj["edge_amplitude"] = row.spec.edge_amplitude;
        rj["match_shift"] = row.competitor.match_shift;
        rj["volume_rel_error"] = vol_rel;
        rj["boundary_distance"] = row.competitor.boundary_distance;
        rj["lhs"] = c.lhs;
        rj["slack"] = c.slack;
        rj["defect"] = c.defect;
        rj["in_regime"] = c.in_regime;
        rows_json.push_back(rj);
        rows.push_back({std::to_string(row.seed), format_real(row.spec.amplitude),
                        format_real(row.spec.center), format_real(row.spec.width),
                        format_real(row.spec.edge_amplitude),
                        format_real(row.competitor.match_shift), format_real(vol_rel),
                        format_real(row.competitor.boundary_distance),
                        format_real(c.lhs), format_real(c.cone_area),
                        format_real(c.flux_n_minus_np), format_real(c.flux_np_minus_n),
                        format_real(c.slack), format_real(c.defect),
                        format_real(c.two_route_residual), yesno(c.in_regime),
                        yesno(c.inequality_ok)});
    }
    ordered_json res;
    res["rows"] = rows_json;
    report.results = res;

    report.checks.push_back({"cone-equality", cone_ok, "zero slack for the cone itself"});
    report.checks.push_back({"strict-minimality", slack_ok,
                             "positive slack for every seeded competitor"});
    if (cfg.volume_match)
        report.checks.push_back({"volume-match", volume_ok, "relative error <= 1e-8"});
    report.checks.push_back({"two-route-flux", route_ok, ""});
    report.checks.push_back({"regime", regime_ok, "all traces inside the safe band"});

    files.emplace_back(
        "minimality.csv",
        render_csv({"seed", "amplitude", "center", "width", "edge_amplitude",
                    "match_shift", "volume_rel_error", "boundary_distance", "lhs",
                    "cone_area", "flux_n_minus_np", "flux_np_minus_n", "slack",
                    "defect", "two_route_residual", "in_regime", "inequality_ok"},
                   rows));
}

}  // namespace

int run(const RunConfig& cfg, const std::string& out_dir, bool verbose, Report* out) {
    Report report;
    report.command = command_name(cfg.command);
    report.config = config_json(cfg);
    OutputFiles files;

    try {
        switch (cfg.command) {
            case Command::spectrum: run_spectrum(cfg, report, files); break;
            case Command::sweep: run_sweep(cfg, report, files); break;
            case Command::compact_analog: run_compact(cfg, report, files); break;
            case Command::calibrate: run_calibrate(cfg, report, files, verbose); break;
            case Command::compare: run_compare(cfg, report, files, verbose); break;
        }
    } catch (const Error& e) {
        report.checks.push_back({"execution", false, e.what()});
    }

    try {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        files.emplace_back("report.json", report.to_json().dump(2) + "\n");
        for (const auto& [name, content] : files)
            atomic_write((fs::path(out_dir) / name).string(), content);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        if (out) *out = report;
        return kExitIoError;
    }

    if (out) *out = report;
    return report.pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace conecal::cli
