#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ribbon/curve.hpp"
#include "ribbon/errors.hpp"
#include "ribbon/framing.hpp"
#include "ribbon/tolerances.hpp"
#include "ribbon/vec3.hpp"

namespace ribbon {

/// Tw = (1/2pi) \int ds (t x u) . du/ds, trapezoid on the periodic grid.
inline double twist(const ClosedCurve& curve, const Framing& framing) {
    const auto t = tangent_field(curve);
    const auto udot = periodic_derivative(framing.vectors(), curve.h());
    double sum = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i)
        sum += triple(t[i], framing[i], udot[i]);
    return sum * curve.h() / kTwoPi;
}

namespace detail {

// Theta-integrated direction-sphere twist integrand at sample i:
// (1/4pi) \int_0^pi dtheta (d_theta v x d_s v) . v  with
// v(s, theta) = t cos(theta) + u sin(theta), via composite Simpson.
inline double twist_sphere_integrand(const Vec3& t, const Vec3& u, const Vec3& tdot,
                                     const Vec3& udot, std::size_t n_theta) {
    if (n_theta % 2 == 1) ++n_theta;  // Simpson needs an even interval count
    const double dth = kPi / double(n_theta);
    double sum = 0.0;
    for (std::size_t k = 0; k <= n_theta; ++k) {
        const double th = dth * double(k);
        const double c = std::cos(th), s = std::sin(th);
        const Vec3 v = t * c + u * s;
        const Vec3 vth = t * (-s) + u * c;
        const Vec3 vs = tdot * c + udot * s;
        const double f = triple(vth, vs, v);
        const double w = (k == 0 || k == n_theta) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        sum += w * f;
    }
    return sum * dth / 3.0 / kFourPi;
}

}  // namespace detail

/// Twist via the direction-sphere double integral (local crossing average).
inline double twist_local_form(const ClosedCurve& curve, const Framing& framing,
                               std::size_t n_theta) {
    if (n_theta < 16) throw BadParameter("n_theta must be at least 16");
    const auto t = tangent_field(curve);
    const auto tdot = periodic_derivative(t, curve.h());
    const auto udot = periodic_derivative(framing.vectors(), curve.h());
    double sum = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i)
        sum += detail::twist_sphere_integrand(t[i], framing[i], tdot[i], udot[i], n_theta);
    return sum * curve.h();
}

/// Pointwise identity check: (theta-integrated sphere integrand,
/// (1/2pi)(t x u).udot) at sample i.  The two must agree.
inline std::pair<double, double> twist_integrand_pair(const ClosedCurve& curve,
                                                      const Framing& framing, std::size_t i,
                                                      std::size_t n_theta) {
    if (i >= curve.size()) throw BadParameter("sample index out of range");
    const auto t = tangent_field(curve);
    const auto tdot = periodic_derivative(t, curve.h());
    const auto udot = periodic_derivative(framing.vectors(), curve.h());
    const double lhs = detail::twist_sphere_integrand(t[i], framing[i], tdot[i], udot[i], n_theta);
    const double rhs = triple(t[i], framing[i], udot[i]) / kTwoPi;
    return {lhs, rhs};
}

/// Wr = (1/4pi) \int\int ds ds' (a'(s) x a'(s')) . (a(s)-a(s')) / |a(s)-a(s')|^3,
/// trapezoid over the N x N periodic grid with the diagonal set to zero (the
/// integrand vanishes linearly there for smooth curves).
inline double writhe(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    const auto& a = curve.samples();
    const auto& ad = curve.derivative();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3 r = a[i] - a[j];
            const double d2 = r.norm2();
            const double d = std::sqrt(d2);
            sum += 2.0 * triple(ad[i], ad[j], r) / (d2 * d);
        }
    }
    return sum * curve.h() * curve.h() / kFourPi;
}

/// Pointwise writhe integrand at parameter offsets (used for the diagonal
/// scaling diagnostic).
inline double writhe_integrand(const ClosedCurve& curve, std::size_t i, std::size_t j) {
    if (i % curve.size() == j % curve.size()) return 0.0;  // zero diagonal
    const Vec3 r = curve[i] - curve[j];
    const double d = r.norm();
    return triple(curve.derivative()[i], curve.derivative()[j], r) / (d * d * d);
}

namespace detail {

// Exact Gauss integral of one segment pair (p1->p2, p3->p4): the signed
// solid angle of the spherical quadrilateral of chord directions
// (Klenin & Langowski 2000, method 1a).  Coplanar pairs contribute zero.
inline double segment_pair_solid_angle(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                                       const Vec3& p4) {
    const Vec3 r12 = p2 - p1, r34 = p4 - p3;
    const Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
    const double sgn = triple(r34, r12, r13);
    if (sgn == 0.0) return 0.0;
    Vec3 n1 = r13.cross(r14), n2 = r14.cross(r24), n3 = r24.cross(r23), n4 = r23.cross(r13);
    const double m1 = n1.norm(), m2 = n2.norm(), m3 = n3.norm(), m4 = n4.norm();
    if (m1 < 1e-300 || m2 < 1e-300 || m3 < 1e-300 || m4 < 1e-300) return 0.0;
    n1 = n1 / m1; n2 = n2 / m2; n3 = n3 / m3; n4 = n4 / m4;
    auto asin_clamped = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };
    const double omega = asin_clamped(n1.dot(n2)) + asin_clamped(n2.dot(n3)) +
                         asin_clamped(n3.dot(n4)) + asin_clamped(n4.dot(n1));
    return (sgn > 0.0) ? omega : -omega;
}

}  // namespace detail

/// Gauss linking integral of two disjoint closed polylines, evaluated
/// exactly segment pair by segment pair.  Converges to the topological
/// linking number regardless of how small the curve separation is relative
/// to the sample spacing (the ribbon-edge case).
inline double gauss_linking(const ClosedCurve& a, const ClosedCurve& b) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            dmin = std::min(dmin, (a[i] - b[j]).norm2());
    if (std::sqrt(dmin) < tolerances().curves_too_close)
        throw CurvesTooClose("curves closer than hard minimum separation");

    double omega = 0.0;
    const std::size_t na = a.size(), nb = b.size();
    for (std::size_t i = 0; i < na; ++i) {
        const Vec3& p1 = a[i];
        const Vec3& p2 = a[(i + 1) % na];
        double row = 0.0;
        for (std::size_t j = 0; j < nb; ++j)
            row += detail::segment_pair_solid_angle(p1, p2, b[j], b[(j + 1) % nb]);
        omega += row;
    }
    return omega / kFourPi;
}

/// Lk, Tw, Wr and the Calugareanu residual for one ribbon.
struct InvariantReport {
    double lk_gauss = 0.0;
    long lk_rounded = 0;
    double tw = 0.0;
    double wr = 0.0;
    double residual = 0.0;  // lk_gauss - tw - wr
    std::size_t n = 0;
    std::map<std::string, double> diagnostics;

    bool lk_flagged() const { return std::abs(lk_gauss - double(lk_rounded)) > tolerances().lk_integer_flag; }
    bool residual_flagged() const { return std::abs(residual) > tolerances().residual_flag; }
    bool flagged() const { return lk_flagged() || residual_flagged(); }
};

namespace detail {

inline InvariantReport analyze_once(const Ribbon& ribbon) {
    InvariantReport rep;
    rep.n = ribbon.axis.size();
    const ClosedCurve edge = edge_curve(ribbon);
    rep.lk_gauss = gauss_linking(ribbon.axis, edge);
    rep.lk_rounded = std::lround(rep.lk_gauss);
    rep.tw = twist(ribbon.axis, ribbon.framing);
    rep.wr = writhe(ribbon.axis);
    rep.residual = rep.lk_gauss - rep.tw - rep.wr;
    return rep;
}

}  // namespace detail

/// Full invariant analysis with a half-resolution re-computation in the
/// diagnostics for convergence estimation.
inline InvariantReport analyze(const Ribbon& ribbon) {
    InvariantReport rep = detail::analyze_once(ribbon);
    const std::size_t n = ribbon.axis.size();
    if (n / 2 >= ClosedCurve::kMinSamples) {
        std::vector<Vec3> half_pts, half_u;
        for (std::size_t i = 0; i < n; i += 2) {
            half_pts.push_back(ribbon.axis[i]);
            half_u.push_back(ribbon.framing[i]);
        }
        ClosedCurve half_axis = ClosedCurve::from_samples(std::move(half_pts), ribbon.axis.name());
        Framing half_framing = normalize_framing(half_axis, half_u);
        const InvariantReport half = detail::analyze_once(
            Ribbon{std::move(half_axis), std::move(half_framing), ribbon.epsilon});
        rep.diagnostics["lk_gauss_half_n"] = half.lk_gauss;
        rep.diagnostics["tw_half_n"] = half.tw;
        rep.diagnostics["wr_half_n"] = half.wr;
        rep.diagnostics["residual_half_n"] = half.residual;
        rep.diagnostics["tw_convergence"] = std::abs(rep.tw - half.tw);
        rep.diagnostics["wr_convergence"] = std::abs(rep.wr - half.wr);
    }
    rep.diagnostics["epsilon"] = ribbon.epsilon;
    rep.diagnostics["lk_flag"] = rep.lk_flagged() ? 1.0 : 0.0;
    rep.diagnostics["residual_flag"] = rep.residual_flagged() ? 1.0 : 0.0;
    return rep;
}

}  // namespace ribbon
