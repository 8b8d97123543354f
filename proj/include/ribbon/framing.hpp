#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ribbon/curve.hpp"
#include "ribbon/errors.hpp"
#include "ribbon/tolerances.hpp"
#include "ribbon/vec3.hpp"

namespace ribbon {

/// A unit normal field u_i along a curve, one vector per sample.
class Framing {
public:
    static Framing from_vectors(const ClosedCurve& curve, std::vector<Vec3> u) {
        validate(curve, u);
        return Framing(std::move(u));
    }

    std::size_t size() const { return u_.size(); }
    const Vec3& operator[](std::size_t i) const { return u_[i % u_.size()]; }
    const std::vector<Vec3>& vectors() const { return u_; }

    Framing reversed() const {
        std::vector<Vec3> rev(u_.rbegin(), u_.rend());
        std::rotate(rev.begin(), rev.end() - 1, rev.end());
        return Framing(std::move(rev));
    }

    Framing mirrored() const {
        std::vector<Vec3> m(u_);
        for (auto& v : m) v.z = -v.z;
        return Framing(std::move(m));
    }

    static void validate(const ClosedCurve& curve, const std::vector<Vec3>& u) {
        const auto& tol = tolerances();
        if (u.size() != curve.size())
            throw BadParameter("framing size does not match curve size");
        const auto t = tangent_field(curve);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (std::abs(u[i].norm() - 1.0) > tol.unit_norm)
                throw BadParameter("framing vector not unit-norm at index " + std::to_string(i));
            if (std::abs(u[i].dot(t[i])) > tol.perpendicular)
                throw BadParameter("framing vector not perpendicular to tangent at index " +
                                   std::to_string(i));
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i].dot(u[(i + 1) % u.size()]) <= 0.0)
                throw DiscontinuousFraming("framing flips between samples " + std::to_string(i) +
                                           " and " + std::to_string(i + 1));
        }
    }

private:
    explicit Framing(std::vector<Vec3> u) : u_(std::move(u)) {}
    std::vector<Vec3> u_;
};

/// Project out the tangent component of each raw vector and normalize.
inline Framing normalize_framing(const ClosedCurve& curve, const std::vector<Vec3>& raw) {
    if (raw.size() != curve.size()) throw BadParameter("raw framing size mismatch");
    const auto t = tangent_field(curve);
    std::vector<Vec3> u(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const Vec3 perp = raw[i] - t[i] * raw[i].dot(t[i]);
        const double n = perp.norm();
        if (n < 1e-9)
            throw ParallelToTangent("raw vector parallel to tangent at index " + std::to_string(i));
        u[i] = perp / n;
    }
    return Framing::from_vectors(curve, u);
}

/// Frenet framing: u_i along dt/ds.  Undefined where the curve is locally
/// straight.
inline Framing frenet_framing(const ClosedCurve& curve) {
    const auto t = tangent_field(curve);
    const auto tdot = periodic_derivative(t, curve.h());
    std::vector<Vec3> u(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (tdot[i].norm() < tolerances().flat_normal)
            throw UndefinedNormal("Frenet normal undefined at index " + std::to_string(i));
        u[i] = tdot[i].normalized();
    }
    return normalize_framing(curve, u);
}

/// Base framing from a fixed reference direction: u ~ zhat x t (or xhat x t
/// where that degenerates), rotated about t by k full right-handed turns per
/// circuit.  For planar curves in the xy-plane the base is the in-plane
/// normal with zero twist.
inline Framing turns_framing(const ClosedCurve& curve, double k) {
    const auto t = tangent_field(curve);
    std::vector<Vec3> u(t.size());
    const Vec3 zhat{0, 0, 1}, xhat{1, 0, 0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        Vec3 base = zhat.cross(t[i]);
        if (base.norm() < 1e-6) base = xhat.cross(t[i]);
        base = base.normalized();
        u[i] = rotate_about(base, t[i], kTwoPi * k * curve.param(i));
    }
    return normalize_framing(curve, u);
}

/// Closed ribbon: axis curve, perpendicular framing, small offset epsilon.
struct Ribbon {
    ClosedCurve axis;
    Framing framing;
    double epsilon;
};

/// Default epsilon: 1e-3 x the minimum non-adjacent segment distance of the
/// axis, so the edge never meets the axis.
inline double default_epsilon(const ClosedCurve& axis) {
    return 1e-3 * axis.min_nonadjacent_segment_distance();
}

inline Ribbon make_ribbon(ClosedCurve axis, Framing framing, double epsilon = 0.0) {
    Framing::validate(axis, framing.vectors());
    const double dmin = axis.min_nonadjacent_segment_distance();
    if (epsilon == 0.0) epsilon = 1e-3 * dmin;
    if (epsilon <= 0.0) throw BadParameter("ribbon epsilon must be positive");
    if (epsilon >= 0.1 * dmin)
        throw BadParameter("ribbon epsilon too large for curve geometry");
    return Ribbon{std::move(axis), std::move(framing), epsilon};
}

/// Offset curve a_i + epsilon u_i.  epsilon = 0 reproduces the axis; that is
/// only reachable through this diagnostic entry point, Ribbon construction
/// rejects it.
inline ClosedCurve offset_curve(const ClosedCurve& axis, const Framing& framing, double epsilon) {
    std::vector<Vec3> pts(axis.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i] = axis[i] + framing[i] * epsilon;
    return ClosedCurve::from_samples(std::move(pts), axis.name() + "_edge");
}

/// The ribbon edge b_i = a_i + epsilon u_i.
inline ClosedCurve edge_curve(const Ribbon& ribbon) {
    return offset_curve(ribbon.axis, ribbon.framing, ribbon.epsilon);
}

}  // namespace ribbon
