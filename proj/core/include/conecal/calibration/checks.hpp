#pragma once

#include <optional>
#include <vector>

#include "conecal/calibration/field.hpp"
#include "conecal/geometry/competitor.hpp"
#include "conecal/geometry/curve.hpp"
#include "conecal/geometry/domain.hpp"

namespace conecal::calibration {

using geometry::Competitor;
using geometry::DomainParams;
using geometry::ReducedRegion;

/// Largest trace distance for which the boundary-sign argument is claimed:
/// 0.6 of the ridge crest by default.
double safe_band(const DomainParams& params);

struct GaussGreenResult {
    double area = 0.0;             // weighted area of the cone inside the domain
    double flux = 0.0;             // -integral of X.n over the below-diagonal arc
    double discrepancy_rel = 0.0;  // |area - flux| / area
};

/// Gauss-Green identity on the reduced region N (below-diagonal part of the
/// domain): the cone area must equal the negative boundary flux of X.
/// A degenerate region (fewer than 3 loop vertices) yields all zeros.
GaussGreenResult gauss_green_check(const ReducedRegion& region,
                                   const DomainParams& params,
                                   const CalibrationField& field,
                                   double quad_tol = 1e-10);

struct SignSample {
    double theta = 0.0;
    double d = 0.0;        // trace distance from the cone trace
    int side = 0;          // -1: below diagonal (N side), +1: above
    double x_dot_n = 0.0;
};

struct SignBandReport {
    std::vector<SignSample> samples;   // the claimed band, both sides
    double trench_abs = 0.0;           // |X.n| at theta = pi/4
    double d_claim = 0.0;              // band over which strict signs are claimed
    double d_safe_measured = 0.0;      // largest measured distance with strict signs
    bool pass = false;
    std::optional<SignSample> first_violation;
};

/// Verifies X.n = 0 on the cone trace, X.n > 0 on the N-side band and
/// X.n < 0 on the far side, and measures how far the strict signs extend.
SignBandReport sign_band_check(const DomainParams& params, const CalibrationField& field,
                               int n_samples, double d_claim = -1.0);

struct MinimalityReport {
    double lhs = 0.0;                 // competitor area |M' . Omega|
    double cone_area = 0.0;           // |M . Omega|
    double flux_n_minus_np = 0.0;     // integral of X.n over (N \ N') . boundary
    double flux_np_minus_n = 0.0;     // integral of X.n over (N' \ N) . boundary
    double slack = 0.0;               // lhs - cone_area - flux difference
    double defect = 0.0;              // integral of (1 - X.nu) along the competitor
    double two_route_residual = 0.0;  // curve flux vs boundary flux disagreement
    bool in_regime = true;            // trace inside the safe band
    bool inequality_ok = false;       // slack >= -1e-6 * lhs (meaningful in regime)
    bool two_route_ok = false;
    double tolerance = 1e-6;
};

/// Evaluates every term of the minimality inequality for a competitor built
/// by make_competitor, plus the divergence-theorem flux identity along the
/// competitor and the calibration defect.
MinimalityReport minimality_check(const Competitor& competitor, const DomainParams& params,
                                  const CalibrationField& field);

}  // namespace conecal::calibration
