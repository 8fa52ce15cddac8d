#pragma once

#include <cstdint>
#include <cstddef>

#include "conecal/geometry/curve.hpp"
#include "conecal/geometry/domain.hpp"

namespace conecal::geometry {

/// Normal perturbation of the cone generating segment.  The displacement is
///   w(t) = amplitude * bump((t - center)/width) + edge_amplitude * ramp(t)
/// where bump is a compactly supported mollifier, ramp rises smoothly from 0
/// over [0.93, 1], and positive displacement points into {u > v}.
struct PerturbationSpec {
    double amplitude = 0.0;
    double center = 0.55;
    double width = 0.25;
    double edge_amplitude = 0.0;
    bool volume_match = false;

    /// Seeded draw from the shipped competitor family: interior amplitude in
    /// +-[upsilon/8, upsilon/4], edge amplitude in +-[upsilon/25, upsilon/8],
    /// volume matching on.
    static PerturbationSpec random(std::uint64_t seed, const DomainParams& params);

    /// Throws ConstraintError when the boundary-zone displacement can exceed
    /// the upsilon/2 closeness band.
    void validate(const DomainParams& params) const;
};

struct Competitor {
    GeneratingCurve curve;       // origin to the boundary of the reduced domain
    ReducedRegion region;        // enclosed N' region: axis, arc, reversed curve
    double volume = 0.0;         // weighted volume of N'
    double cone_volume = 0.0;    // weighted volume of the unperturbed N
    double boundary_theta = 0.0; // quadrant angle of the boundary endpoint
    double boundary_distance = 0.0; // cross-section distance of the trace from the cone trace
    double match_shift = 0.0;    // volume-matching shear actually applied
};

/// Builds a competitor curve inside the reduced domain whose outer endpoint
/// lies on the reduced boundary within upsilon/2 of the cone trace.  With
/// spec.volume_match set, an interior shear is bisected until the enclosed
/// weighted volume matches the cone's to 1e-8 relative.
Competitor make_competitor(const PerturbationSpec& spec, const DomainParams& params,
                           std::size_t n_vertices = 4096);

}  // namespace conecal::geometry
