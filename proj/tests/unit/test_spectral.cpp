#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "conecal/errors.hpp"
#include "conecal/numerics/quadrature.hpp"
#include "conecal/spectral/compact_analog.hpp"
#include "conecal/spectral/radial.hpp"
#include "conecal/spectral/sweep.hpp"
#include "conecal/spectral/zonal.hpp"

using namespace conecal;
using namespace conecal::spectral;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("closed-form eigenvalues") {
    CHECK(delta1_closed(1.0) == 0.0);
    CHECK(delta1_closed(6.0) == 6.25);
    CHECK(delta1_closed(5.0) == 6.0);
    CHECK(delta1_closed(20.0) == 6.25);
    CHECK(mu1_closed(1.0) == -6.0);
    CHECK(mu1_closed(10.0) == 0.25);
    CHECK(mu1_closed(5.0) == 0.0);

    SUBCASE("continuity at the saturation point and monotonicity below it") {
        CHECK(delta1_closed(6.0 - 1e-9) == doctest::Approx(6.25).epsilon(1e-12));
        double prev = -std::numeric_limits<double>::infinity();
        for (double k = -3.0; k <= 6.0; k += 0.25) {
            const double val = delta1_closed(k);
            CHECK(val >= prev);
            prev = val;
        }
    }
    CHECK_THROWS_AS(delta1_closed(std::nan("")), InvalidInputError);
}

TEST_CASE("angular eigenvalues on the product of 3-spheres") {
    CHECK(angular_eigenvalue({0, 0}) == -6.0);
    CHECK(angular_eigenvalue({1, 0}) == 0.0);
    CHECK(angular_eigenvalue({0, 1}) == 0.0);
    CHECK(angular_eigenvalue({1, 1}) == 6.0);
    CHECK(angular_eigenvalue({2, 0}) == 10.0);
    CHECK_THROWS_AS(angular_eigenvalue({-1, 0}), InvalidInputError);
}

TEST_CASE("zonal sphere spectrum reproduces k(k+2)") {
    const auto vals = zonal_sphere_spectrum(6, 2000);
    for (int k = 0; k <= 5; ++k)
        CHECK(std::abs(vals[k] - k * (k + 2)) < 1e-3);
    CHECK_THROWS_AS(zonal_sphere_spectrum(3, 100), InvalidInputError);
    CHECK_THROWS_AS(zonal_sphere_spectrum(0, 2000), InvalidInputError);
}

TEST_CASE("radial_eigensolve_z: Neumann-equivalent K = 1") {
    RadialProblem p;
    p.K = 1.0;
    p.Z = 80.0;
    p.step = 0.005;
    const EigenResult r = radial_eigensolve_z(p);
    CHECK(std::abs(r.eigenvalue) <= 1e-3);
    CHECK(r.residual <= 1e-8);
    CHECK(r.eigenfunction.front() == 0.0);  // Dirichlet truncation node
    SUBCASE("weighted normalization of the eigenfunction") {
        double norm2 = 0.0;
        const auto& h = r.eigenfunction;
        for (std::size_t i = 1; i < h.size(); ++i) {
            const double w = (i + 1 == h.size()) ? 0.5 : 1.0;
            norm2 += w * h[i] * h[i] * p.step;
        }
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("radial_eigensolve_z: subcritical closed form and saturation") {
    SUBCASE("K = 5.5") {
        RadialProblem p;
        p.K = 5.5;
        p.Z = 100.0;
        p.step = 0.005;
        CHECK(std::abs(radial_eigensolve_z(p).eigenvalue - 6.1875) <= 1e-3);
    }
    SUBCASE("K = 6 sits just above 25/4 at finite truncation") {
        RadialProblem p;
        p.K = 6.0;
        p.Z = 200.0;
        p.step = 0.01;
        const double val = radial_eigensolve_z(p).eigenvalue;
        CHECK(val >= 6.25);
        CHECK(std::abs(val - 6.25) <= 1e-2);
        // Dirichlet-Neumann gap of the truncated interval: (pi / 2Z)^2.
        CHECK(val - 6.25 ==
              doctest::Approx(std::pow(kPi / (2.0 * p.Z), 2)).epsilon(0.02));
    }
    SUBCASE("doubling Z decreases the saturated eigenvalue monotonically") {
        double prev = std::numeric_limits<double>::infinity();
        for (double Z : {100.0, 200.0, 400.0}) {
            RadialProblem p;
            p.K = 8.0;
            p.Z = Z;
            p.step = 0.005;
            const double val = radial_eigensolve_z(p).eigenvalue;
            CHECK(val >= 6.25);
            CHECK(val < prev);
            prev = val;
        }
    }
    SUBCASE("second-order convergence in the step") {
        // K = 4: exact value 5.25, truncation error negligible at Z = 60.
        auto solve = [](double step) {
            RadialProblem p;
            p.K = 4.0;
            p.Z = 60.0;
            p.step = step;
            return radial_eigensolve_z(p).eigenvalue;
        };
        const double e1 = std::abs(solve(0.02) - 5.25);
        const double e2 = std::abs(solve(0.01) - 5.25);
        const double e3 = std::abs(solve(0.005) - 5.25);
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
        CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.25));
    }
}

TEST_CASE("radial_eigensolve_z: Dirichlet variant saturates at 25/4") {
    RadialProblem p;
    p.K = 8.0;  // ignored by the Dirichlet condition
    p.Z = 200.0;
    p.step = 0.005;
    p.boundary = BoundaryConditionKind::dirichlet;
    const double val = radial_eigensolve_z(p).eigenvalue;
    CHECK(std::abs(val - 6.25) <= 1e-2);
    CHECK(val - 6.25 == doctest::Approx(std::pow(kPi / p.Z, 2)).epsilon(0.02));
}

TEST_CASE("radial problem validation") {
    RadialProblem coarse;
    coarse.step = 0.2;
    CHECK_THROWS_AS(radial_eigensolve_z(coarse), InvalidInputError);
    RadialProblem ragged;
    ragged.Z = 100.0;
    ragged.step = 0.0071;  // Z/step is not an integer
    CHECK_THROWS_AS(radial_eigensolve_z(ragged), InvalidInputError);
    RadialProblem deep_t;
    deep_t.Z = 200.0;
    deep_t.step = 0.01;
    deep_t.coordinate = RadialCoordinate::t_form;
    CHECK_THROWS_AS(radial_eigensolve_t(deep_t), InvalidInputError);
}

TEST_CASE("radial_eigensolve_t agrees with the z-form on matched grids") {
    SUBCASE("K = 1 on the log grid") {
        RadialProblem p;
        p.K = 1.0;
        p.Z = 80.0;
        p.step = 0.005;
        p.coordinate = RadialCoordinate::t_form;
        CHECK(std::abs(radial_eigensolve_t(p).eigenvalue) <= 1e-3);
    }
    for (double K : {1.0, 4.0, 8.0}) {
        CAPTURE(K);
        RadialProblem p;
        p.K = K;
        p.Z = 100.0;
        p.step = 0.005;
        const EigenResult rz = radial_eigensolve_z(p);
        p.coordinate = RadialCoordinate::t_form;
        const EigenResult rt = radial_eigensolve_t(p);
        CHECK(std::abs(rt.eigenvalue - rz.eigenvalue) <= 1e-6);

        // Mapping the t-form eigenfunction into log coordinates must land on
        // the z-form eigenfunction.
        const auto h = to_log_coordinates(rt.eigenfunction, rt.grid);
        double sup = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i)
            sup = std::max(sup, std::abs(h[i] - rz.eigenfunction[i]));
        CHECK(sup <= 1e-6);
    }
}

TEST_CASE("change of variables") {
    RadialProblem p;
    p.Z = 30.0;
    p.step = 0.01;
    const auto t = p.t_nodes();
    const auto z = p.z_nodes();

    SUBCASE("g = t^{-5/2} maps to the constant function") {
        std::vector<double> g(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) g[i] = std::pow(t[i], -2.5);
        const auto h = to_log_coordinates(g, t);
        for (double x : h) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("round trip is the identity") {
        std::vector<double> g(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) g[i] = std::sin(3.0 * z[i]) + 2.0;
        const auto back = from_log_coordinates(to_log_coordinates(g, t), z);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(back[i] == doctest::Approx(g[i]).epsilon(1e-12));
    }
    SUBCASE("the subcritical eigenfunction maps to a pure exponential") {
        // g(t) = t^{(1-K)/2} solves the Euler problem for K < 6; its image is
        // e^{(6-K) z / 2}.
        const double K = 4.0;
        std::vector<double> g(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) g[i] = std::pow(t[i], 0.5 * (1.0 - K));
        const auto h = to_log_coordinates(g, t);
        for (std::size_t i = 0; i < h.size(); ++i)
            CHECK(h[i] ==
                  doctest::Approx(std::exp(0.5 * (6.0 - K) * z[i])).epsilon(1e-12));
    }
    SUBCASE("nonpositive grid entries are rejected") {
        std::vector<double> g{1.0, 1.0};
        std::vector<double> bad{0.0, 1.0};
        CHECK_THROWS_AS(to_log_coordinates(g, bad), InvalidInputError);
    }
}

TEST_CASE("radial_energy") {
    SUBCASE("analytic minimizer for K = 4") {
        const double Z = 25.0, step = 0.005;
        const std::size_t n = static_cast<std::size_t>(std::llround(Z / step)) + 1;
        std::vector<double> h(n);
        for (std::size_t i = 0; i < n; ++i) h[i] = std::exp(-Z + step * i);
        CHECK(std::abs(rayleigh_quotient_z(h, step, 4.0) - 5.25) <= 1e-6);
    }
    SUBCASE("boundary term vanishes exactly when h(0) = 0") {
        const double step = 0.01;
        const std::size_t n = 2001;
        std::vector<double> h(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double zz = -step * (n - 1) + step * i;
            h[i] = std::exp(2.0 * zz) * (-zz) * zz * zz;  // h(0) = 0, decays left
        }
        h.back() = 0.0;
        // Without a boundary value the K dependence must drop out entirely.
        CHECK(radial_energy(h, step, 6.0) == radial_energy(h, step, 1e6));
    }
    SUBCASE("the near-constant family approaches the essential spectrum bottom") {
        const double eps = 2.5e-4;
        const double step = 0.02;
        std::size_t m = static_cast<std::size_t>(std::llround(19.0 / eps / step));
        if (m % 2) ++m;
        const double Z = step * static_cast<double>(m);
        std::vector<double> h(m + 1);
        for (std::size_t i = 0; i <= m; ++i)
            h[i] = eps * std::exp(eps * (-Z + step * i));
        const double q = rayleigh_quotient_z(h, step, 8.0);
        CHECK(q > 6.25);
        CHECK(std::abs(q - 6.25) <= 1e-3);
        // The whole gap is the boundary payment 2 eps + eps^2.
        CHECK(q - 6.25 == doctest::Approx(2.0 * eps + eps * eps).epsilon(1e-3));
    }
    SUBCASE("non-decaying input violates the precondition") {
        std::vector<double> h(101, 1.0);
        CHECK_THROWS_AS(radial_energy(h, 0.01, 4.0), PreconditionError);
    }
    SUBCASE("quotients never fall measurably below the closed form") {
        // Random decaying test functions; C * step^2 slack with C reported.
        const double K = 3.0, step = 0.005, Z = 40.0;
        const std::size_t n = static_cast<std::size_t>(std::llround(Z / step)) + 1;
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> unif(0.5, 2.0);
        double c_observed = 0.0;
        for (int trial = 0; trial < 8; ++trial) {
            const double a = unif(rng), b = 3.0 * unif(rng), w = unif(rng);
            std::vector<double> h(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double zz = -Z + step * i;
                h[i] = std::exp(a * zz) * (1.0 + 0.3 * std::sin(w * zz)) +
                       0.5 * std::exp(b * zz);
            }
            const double q = rayleigh_quotient_z(h, step, K);
            c_observed =
                std::max(c_observed, (delta1_closed(K) - q) / (step * step));
        }
        MESSAGE("lower-bound slack constant C = ", c_observed);
        CHECK(c_observed <= 50.0);
    }
}

TEST_CASE("second_variation") {
    RadialProblem p;
    p.K = 8.0;
    p.Z = 25.0;
    p.step = 0.005;
    const auto t = p.t_nodes();

    SUBCASE("two routes through the same energy") {
        std::vector<double> g(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) g[i] = t[i];
        const double via_t = second_variation(g, t, {0, 0}, p.K);

        const auto h = to_log_coordinates(g, t);
        std::vector<double> sq(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) sq[i] = h[i] * h[i];
        const double norm2 = numerics::integrate_samples(sq, p.step);
        const double via_z =
            radial_energy(h, p.step, p.K) + angular_eigenvalue({0, 0}) * norm2;
        CHECK(std::abs(via_t - via_z) <= 1e-6);
    }
    SUBCASE("higher angular modes shift the quotient by the exact spectral gap") {
        std::vector<double> g(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) g[i] = t[i] * (2.0 - t[i]);
        const double q00 = second_variation_quotient(g, t, {0, 0}, p.K);
        const double q10 = second_variation_quotient(g, t, {1, 0}, p.K);
        CHECK(q10 - q00 == doctest::Approx(6.0).epsilon(1e-12));
        CHECK(q10 >= q00 + 6.0 - 1e-9);
    }
    SUBCASE("unbounded or non-vanishing samples are rejected") {
        std::vector<double> g(t.size(), 1.0);
        CHECK_THROWS_AS(second_variation(g, t, {0, 0}, p.K), PreconditionError);
    }
}

TEST_CASE("compact interval analog") {
    const double pi2 = kPi * kPi;
    SUBCASE("Dirichlet limit") {
        CHECK(std::abs(compact_analog_eigenvalue(1e8) - pi2) <= 1e-5);
    }
    SUBCASE("first-order asymptotics at kappa = 100") {
        const double val = compact_analog_eigenvalue(100.0);
        CHECK(std::abs(val - pi2 * (1.0 + 2.0 / 100.0)) <= 5.0 * pi2 / (100.0 * 100.0));
        CHECK(val > pi2);
    }
    SUBCASE("negative kappa lands symmetrically below the Dirichlet value") {
        const double val = compact_analog_eigenvalue(-100.0);
        CHECK(val < pi2);
        CHECK(std::abs(val - pi2 * (1.0 - 2.0 / 100.0)) <= 5.0 * pi2 / (100.0 * 100.0));
    }
    CHECK_THROWS_AS(compact_analog_eigenvalue(0.0), InvalidInputError);
}

TEST_CASE("stability threshold") {
    const double threshold = stability_threshold();
    CHECK(std::abs(threshold - 5.0) <= 1e-12);
    CHECK(mu1_closed(threshold) == doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("stability sweep over integer K") {
    RadialProblem templ;
    templ.Z = 100.0;
    templ.step = 0.01;
    std::vector<double> ks;
    for (int k = 10; k >= 1; --k) ks.push_back(k);  // unsorted on purpose
    const SweepReport report = stability_sweep(ks, templ);

    REQUIRE(report.rows.size() == 10);
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
        CHECK(report.rows[i].K < report.rows[i + 1].K);  // sorted output

    for (const auto& row : report.rows) {
        CHECK(row.solver_ok);
        CHECK(row.stable == (row.K > 5.0));
    }
    CHECK(report.rows.front().mu1 == doctest::Approx(-6.0).epsilon(1e-3));
    CHECK(report.max_discrepancy_subcritical <= 1e-3);

    SUBCASE("mu1 increases over the subcritical rows") {
        double prev = -std::numeric_limits<double>::infinity();
        for (const auto& row : report.rows) {
            if (row.K >= 6.0) break;
            CHECK(row.mu1 > prev);
            prev = row.mu1;
        }
    }
    SUBCASE("non-finite sweep input is rejected") {
        std::vector<double> bad{1.0, std::nan("")};
        CHECK_THROWS_AS(stability_sweep(bad, templ), InvalidInputError);
    }
}
