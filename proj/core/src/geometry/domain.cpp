#include "conecal/geometry/domain.hpp"

#include <cmath>
#include <numbers>

#include "conecal/errors.hpp"
#include "conecal/numerics/root_find.hpp"

namespace conecal::geometry {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Descending smootherstep on [0,1]: q(0)=1, q(1)=0, q'=q''=0 at both ends.
double smootherstep_down(double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double smootherstep_down_derivative(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -30.0 * x * x * (1.0 - x) * (1.0 - x);
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kHalfPi))
        throw InvalidInputError("quadrant angle must lie in [0, pi/2]");
}

}  // namespace

void DomainParams::validate() const {
    if (!std::isfinite(K)) throw InvalidInputError("K must be finite");
    if (!(upsilon > 0.0 && upsilon <= 0.3))
        throw InvalidInputError("upsilon must lie in (0, 0.3]");
}

double cutoff_chi(double a, const DomainParams& params) {
    params.validate();
    if (a < 0.0) throw InvalidInputError("cutoff argument must be nonnegative");
    const double ups = params.upsilon;
    if (a <= ups) return 1.0;
    return smootherstep_down((a - ups) / ups);
}

double cutoff_chi_derivative(double a, const DomainParams& params) {
    params.validate();
    if (a < 0.0) throw InvalidInputError("cutoff argument must be nonnegative");
    const double ups = params.upsilon;
    if (a <= ups || a >= 2.0 * ups) return 0.0;
    return smootherstep_down_derivative((a - ups) / ups) / ups;
}

double bump(double a, const DomainParams& params) {
    return a * a * cutoff_chi(a, params);
}

double bump_derivative(double a, const DomainParams& params) {
    return 2.0 * a * cutoff_chi(a, params) + a * a * cutoff_chi_derivative(a, params);
}

double bump_crest(const DomainParams& params) {
    params.validate();
    const double ups = params.upsilon;
    // phi still grows just past upsilon (chi' vanishes there) and decays into
    // the cubic contact at 2 upsilon; phi' has resolvable signs on [1.01, 1.98]
    // and its single zero, the crest, sits strictly inside.
    numerics::Bracket bracket{1.01 * ups, 1.98 * ups, 1e-14};
    return numerics::find_root(
        [&](double a) { return bump_derivative(a, params); }, bracket);
}

double cross_section_distance(double theta) {
    check_theta(theta);
    return 2.0 * std::abs(std::sin(0.5 * (theta - kQuarterPi)));
}

double cross_section_distance_derivative(double theta) {
    check_theta(theta);
    if (theta == kQuarterPi) return 0.0;
    const double s = theta > kQuarterPi ? 1.0 : -1.0;
    return s * std::cos(0.5 * (theta - kQuarterPi));
}

double boundary_radius(double theta, const DomainParams& params) {
    return 1.0 + params.K * bump(cross_section_distance(theta), params);
}

double boundary_radius_derivative(double theta, const DomainParams& params) {
    const double d = cross_section_distance(theta);
    // phi'(0) = 0, so the |.| kink in d(theta) never reaches the product.
    return params.K * bump_derivative(d, params) * cross_section_distance_derivative(theta);
}

Vec2 boundary_point(double theta, const DomainParams& params) {
    const double rho = boundary_radius(theta, params);
    return {rho * std::cos(theta), rho * std::sin(theta)};
}

Vec2 boundary_normal(double theta, const DomainParams& params) {
    const double rho = boundary_radius(theta, params);
    const double drho = boundary_radius_derivative(theta, params);
    const Vec2 e_r{std::cos(theta), std::sin(theta)};
    const Vec2 e_t{-std::sin(theta), std::cos(theta)};
    return (rho * e_r - drho * e_t).normalized();
}

}  // namespace conecal::geometry
