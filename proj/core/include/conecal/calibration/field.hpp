#pragma once

#include <functional>

#include "conecal/calibration/leaf.hpp"

namespace conecal::calibration {

struct FieldOptions {
    double tol = 1e-10;      // leaf integration tolerance
    double extent = 1000.0;  // base leaf radius; controls how close to the
                             // diagonal scaled leaves can resolve points
};

/// The unit normal field of the homothety foliation: one base leaf per
/// quadrant component, every other leaf a dilate.  Immutable once built.
struct CalibrationField {
    Leaf above;
    Leaf below;
    double max_radius = 2.0;  // queries allowed up to here

    static CalibrationField build(const FieldOptions& options = {});

    const Leaf& leaf(Side side) const {
        return side == Side::above_diagonal ? above : below;
    }
    /// Angular gap below which a point is treated as on the diagonal.
    double diagonal_floor(Side side) const;
};

struct LeafFoot {
    double scale = 1.0;   // homothety factor of the leaf through the point
    Vec2 foot;            // leaf point at the query's radius
    double alpha = 0.0;   // leaf tangent angle at the foot
    Side side = Side::above_diagonal;
};

/// Leaf of the foliation through an off-diagonal point of radius <= 2, by
/// bisection on the homothety factor with the inside/outside predicate.
/// Throws InvalidInputError for points on (or unresolvably near) the
/// diagonal and OutOfDomainError beyond radius 2.
LeafFoot leaf_through(Vec2 p, const CalibrationField& field);

/// The calibration vector at p: unit normal of the leaf through p, oriented
/// out of N = {u > v}; on the diagonal the cone normal (-1, 1)/sqrt(2).
Vec2 field_X(Vec2 p, const CalibrationField& field);

/// Weighted divergence (u^3 v^3)^{-1} [d_u(u^3 v^3 F_u) + d_v(u^3 v^3 F_v)]
/// of an arbitrary field by central differences with spacing h.  The stencil
/// must stay inside the quadrant and the query region.
double weighted_divergence(const std::function<Vec2(Vec2)>& field, Vec2 p, double h);

/// |weighted divergence of X| at p; tends to zero at O(h^2) plus the leaf
/// interpolation error.
double divergence_residual(Vec2 p, const CalibrationField& field, double h);

}  // namespace conecal::calibration
