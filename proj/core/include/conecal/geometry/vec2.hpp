#pragma once

#include <cmath>

namespace conecal::geometry {

// Point or vector in the (u, v) = (|x'|, |x''|) quadrant.
struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.u + b.u, a.v + b.v}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.u - b.u, a.v - b.v}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.u, s * a.v}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.u, s * a.v}; }

    double dot(Vec2 o) const { return u * o.u + v * o.v; }
    double norm() const { return std::hypot(u, v); }
    Vec2 normalized() const {
        const double r = norm();
        return r > 0.0 ? Vec2{u / r, v / r} : Vec2{0.0, 0.0};
    }
    // Swap coordinates: reflection across the diagonal u = v.
    Vec2 mirrored() const { return {v, u}; }
};

}  // namespace conecal::geometry
