#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ribbon/curve.hpp"
#include "ribbon/errors.hpp"
#include "ribbon/framing.hpp"
#include "ribbon/invariants.hpp"
#include "ribbon/sphere.hpp"
#include "ribbon/tolerances.hpp"
#include "ribbon/vec3.hpp"

namespace ribbon {

/// Spherical curve of chord directions from curve point i to the rest of the
/// curve, running from +t_i to -t_i.  The tangent endpoints are installed
/// analytically.
struct ChordFan {
    std::size_t base_index = 0;
    SphericalPolyline fan;  // open polyline, first point +t_i, last -t_i

    const Vec3& tangent() const { return fan.points.front(); }
};

inline ChordFan chord_fan(const ClosedCurve& curve, std::size_t i) {
    const std::size_t n = curve.size();
    if (i >= n) throw BadParameter("chord fan index out of range");
    const auto t = tangent_field(curve);
    std::vector<Vec3> pts;
    pts.reserve(n + 1);
    pts.push_back(t[i]);
    for (std::size_t k = 1; k < n; ++k)
        pts.push_back((curve[i + k] - curve[i]).normalized());
    pts.push_back(-t[i]);
    return ChordFan{i, SphericalPolyline::make(std::move(pts), false)};
}

/// Semicircle of directions from +t to -t whose midpoint is phase phi about
/// the tangent axis, measured from a fixed reference normal.
struct TwistSemicircle {
    std::size_t base_index = 0;
    double phase = 0.0;
};

/// First usable vector among {zhat x t, xhat x t}, normalized.  Internal
/// bookkeeping only; results are reference-independent.
inline Vec3 reference_normal(const Vec3& t) {
    Vec3 r = Vec3{0, 0, 1}.cross(t);
    if (r.norm() < 1e-6) r = Vec3{1, 0, 0}.cross(t);
    return r.normalized();
}

// Phase is measured clockwise about +t so that advancing it shrinks the
// closure area: closure_area(fan, phi) - closure_area(fan, 0) = -2 phi (mod 4pi).
inline Vec3 semicircle_midpoint(const Vec3& t, double phase) {
    const Vec3 r1 = reference_normal(t);
    const Vec3 r2 = t.cross(r1);
    return r1 * std::cos(phase) - r2 * std::sin(phase);
}

namespace detail {

// Interior points of the phase semicircle traversed -t -> +t.
inline void append_semicircle(std::vector<Vec3>& loop, const Vec3& t, double phase,
                              std::size_t count) {
    const Vec3 mid = semicircle_midpoint(t, phase);
    for (std::size_t k = 1; k <= count; ++k) {
        const double theta = kPi * (1.0 - double(k) / double(count + 1));
        loop.push_back(t * std::cos(theta) + mid * std::sin(theta));
    }
}

}  // namespace detail

/// Signed area (mod 4pi, in (-2pi, 2pi]) of the fan closed by the phase
/// semicircle traversed -t -> +t.
inline double closure_area(const ChordFan& fan, double phase) {
    std::vector<Vec3> loop = fan.fan.points;
    const std::size_t semi_count = (loop.size() + 1) / 2;
    detail::append_semicircle(loop, fan.tangent(), phase, semi_count);
    return spherical_loop_area(SphericalPolyline::make(std::move(loop), true));
}

/// The unique phase in [0, 2pi) whose semicircle closes the fan with zero
/// enclosed area (mod 4pi).  Closed form via lune linearity (rotating the
/// semicircle by phi sweeps a lune of area 2 phi), then verified directly.
inline double bisecting_phase(const ChordFan& fan) {
    const double a0 = closure_area(fan, 0.0);
    auto wrap2pi = [](double x) {
        double r = std::fmod(x, kTwoPi);
        if (r < 0) r += kTwoPi;
        return r;
    };
    const double tol = tolerances().bisect_verify;
    // Try both lune orientations; the verification pins the right one.
    for (const double sign : {+1.0, -1.0}) {
        const double phi = wrap2pi(sign * a0 / 2.0);
        if (std::abs(wrap_solid_angle(closure_area(fan, phi))) < tol) return phi;
    }
    throw VerificationFailed("no phase closes the chord fan with zero area");
}

/// The canonical zero-linking framing: u0_i is the midpoint of the area-
/// bisecting semicircle of the chord fan at i.
inline Framing writhe_framing(const ClosedCurve& curve) {
    std::vector<Vec3> u0(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const ChordFan fan = chord_fan(curve, i);
        u0[i] = semicircle_midpoint(fan.tangent(), bisecting_phase(fan));
    }
    return normalize_framing(curve, u0);
}

/// Build the writhe-framed ribbon and analyze it; lk_rounded must be 0.
inline InvariantReport verify_zero_link(const ClosedCurve& curve, double epsilon = 0.0) {
    return analyze(make_ribbon(curve, writhe_framing(curve), epsilon));
}

struct RelativeLink {
    long value = 0;
    bool flagged = false;  // winding further than 0.01 from an integer
};

/// Winding number of u relative to u0 in the normal plane: the continuously
/// unwrapped signed angle between them, accumulated around the curve,
/// divided by 2pi.
inline RelativeLink relative_link(const ClosedCurve& curve, const Framing& u,
                                  const Framing& u0) {
    const auto t = tangent_field(curve);
    const std::size_t n = curve.size();
    std::vector<double> angle(n);
    for (std::size_t i = 0; i < n; ++i)
        angle[i] = std::atan2(u[i].dot(t[i].cross(u0[i])), u[i].dot(u0[i]));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double step = angle[(i + 1) % n] - angle[i];
        step = std::remainder(step, kTwoPi);
        if (std::abs(step) > kPi / 2.0)
            throw UnwrapAmbiguity("relative framing angle jumps by more than pi/2");
        total += step;
    }
    const double winding = total / kTwoPi;
    RelativeLink out;
    out.value = std::lround(winding);
    out.flagged = std::abs(winding - double(out.value)) > 0.01;
    return out;
}

}  // namespace ribbon
