#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "ribbon/errors.hpp"
#include "ribbon/tolerances.hpp"
#include "ribbon/vec3.hpp"

namespace ribbon {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

/// Ordered unit-vector samples on the direction sphere.  Consecutive points
/// are joined by minor-arc geodesics, so points lying on a common great
/// circle represent that arc exactly.
struct SphericalPolyline {
    std::vector<Vec3> points;
    bool closed = false;

    static SphericalPolyline make(std::vector<Vec3> pts, bool closed_) {
        const auto& tol = tolerances();
        if (pts.size() < 2) throw BadParameter("spherical polyline needs at least 2 points");
        for (auto& p : pts) {
            const double n = p.norm();
            if (std::abs(n - 1.0) > 1e-9)
                throw BadParameter("spherical polyline point not unit-norm");
            p = p / n;  // tighten to machine precision
        }
        const std::size_t n = pts.size();
        const std::size_t edges = closed_ ? n : n - 1;
        for (std::size_t i = 0; i < edges; ++i) {
            if ((pts[i] + pts[(i + 1) % n]).norm() < tol.unit_norm * 10)
                throw AntipodalEdge("consecutive spherical points are antipodal");
        }
        return SphericalPolyline{std::move(pts), closed_};
    }
};

/// Reduce a solid angle mod 4*pi into (-2*pi, 2*pi].
inline double wrap_solid_angle(double a) {
    double r = std::remainder(a, kFourPi);
    if (r <= -kTwoPi) r += kFourPi;
    return r;
}

/// Signed solid angle of the geodesic triangle (a, b, c); positive when the
/// vertices run counterclockwise seen from outside the sphere.  Oosterom-
/// Strackee form, stable for thin triangles.
inline double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double num = triple(a, b, c);
    const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    return 2.0 * std::atan2(num, den);
}

namespace detail {

// The triangle-fan decomposition needs an apex whose antipode stays clear of
// every loop point; any such apex yields the same area mod 4*pi.  The first
// loop point is preferred, but a loop through its antipode (the chord-fan
// closures always are) forces a fallback.
inline Vec3 fan_apex(const std::vector<Vec3>& pts) {
    auto clearance = [&](const Vec3& q) {
        double c = 2.0;
        for (const auto& p : pts) c = std::min(c, (p + q).norm());
        return c;
    };
    std::vector<Vec3> candidates = {pts[0]};
    candidates.push_back((pts[0] + pts[pts.size() / 3]).norm() > 1e-6
                             ? (pts[0] + pts[pts.size() / 3]).normalized()
                             : pts[0]);
    const double inv3 = 1.0 / std::sqrt(3.0);
    for (const Vec3& q : {Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0, 1, 0},
                          Vec3{inv3, inv3, inv3}, Vec3{-inv3, inv3, -inv3},
                          Vec3{inv3, -inv3, -inv3}})
        candidates.push_back(q);
    Vec3 best = pts[0];
    double best_c = -1.0;
    for (const auto& q : candidates) {
        const double c = clearance(q);
        if (c > 1e-3) return q;
        if (c > best_c) { best_c = c; best = q; }
    }
    return best;
}

}  // namespace detail

/// Signed solid angle enclosed by a closed loop on the sphere, as the sum of
/// signed triangle excesses fanned from a fixed apex, reduced into
/// (-2*pi, 2*pi].
inline double spherical_loop_area(const SphericalPolyline& loop) {
    if (!loop.closed) throw BadParameter("spherical_loop_area requires a closed loop");
    const auto& pts = loop.points;
    const std::size_t n = pts.size();
    const auto& tol = tolerances();
    for (std::size_t i = 0; i < n; ++i) {
        if ((pts[i] + pts[(i + 1) % n]).norm() < tol.unit_norm * 10)
            throw AntipodalEdge("antipodal geodesic edge in loop");
    }
    const Vec3 apex = detail::fan_apex(pts);
    double area = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        area += triangle_solid_angle(apex, pts[k], pts[(k + 1) % n]);
    return wrap_solid_angle(area);
}

}  // namespace ribbon
