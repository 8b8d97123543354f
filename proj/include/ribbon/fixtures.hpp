#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ribbon/curve.hpp"
#include "ribbon/framing.hpp"
#include "ribbon/vec3.hpp"

namespace ribbon {

/// Axis of the crossing-census fixture: a limacon with an inner loop, lifted
/// out of plane so the single projected self-crossing (seen from +z) is
/// positive.
inline ClosedCurve fig1_axis(std::size_t n) {
    std::vector<Vec3> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = kTwoPi * double(i) / double(n);
        const double r = 1.0 + 2.0 * std::cos(phi);
        pts[i] = {r * std::cos(phi), r * std::sin(phi), -0.5 * std::sin(phi)};
    }
    return ClosedCurve::from_samples(std::move(pts), "fig1");
}

/// Framing for the fixture.  The framing angle beta = 0.45 + 1.3 sin(phi)
/// (measured from the horizontal normal) swings past edge-on (pi/2) and back
/// without completing a turn, so the frontal view shows exactly one +1 and
/// one -1 local crossing: the Fig.-1 census {+1, -1 local; +1, +1 nonlocal},
/// Lk = +1.
inline Framing fig1_framing(const ClosedCurve& axis) {
    const auto t = tangent_field(axis);
    const std::size_t n = axis.size();
    std::vector<Vec3> raw(n);
    const Vec3 zhat{0, 0, 1};
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = kTwoPi * axis.param(i);
        const double beta = 0.45 + 1.3 * std::sin(phi);
        const Vec3 n1 = t[i].cross(zhat).normalized();  // horizontal, perp t
        const Vec3 n2 = t[i].cross(n1);                 // in the t-z plane
        raw[i] = n1 * std::cos(beta) + n2 * std::sin(beta);
    }
    return normalize_framing(axis, raw);
}

inline Ribbon fig1_ribbon(std::size_t n = 512) {
    ClosedCurve axis = fig1_axis(n);
    Framing framing = fig1_framing(axis);
    return make_ribbon(std::move(axis), std::move(framing));
}

/// The frontal view direction used in the census.
inline Vec3 fig1_direction() { return {0.02, 0.015, 1.0}; }

/// One named case of the built-in verification suite.
struct SuiteCase {
    std::string label;
    Ribbon ribbon;
};

/// The built-in suite: circle with k in {0, 1, 3, -2} reference turns,
/// the figure-2 torus curve with Frenet framing, and a (2,3) torus knot
/// with Frenet framing.
inline std::vector<SuiteCase> built_in_suite(std::size_t n) {
    std::vector<SuiteCase> suite;
    for (const double k : {0.0, 1.0, 3.0, -2.0}) {
        ClosedCurve circle = ClosedCurve::from_parametric("circle", {}, n);
        Framing f = turns_framing(circle, k);
        suite.push_back({"circle_turns_" + std::to_string(int(k)),
                         make_ribbon(std::move(circle), std::move(f))});
    }
    {
        ClosedCurve fig2 = ClosedCurve::from_parametric("paper_fig2", {}, n);
        Framing f = frenet_framing(fig2);
        suite.push_back({"paper_fig2_frenet", make_ribbon(std::move(fig2), std::move(f))});
    }
    {
        ClosedCurve knot = ClosedCurve::from_parametric("torus_knot", {{"p", 2}, {"q", 3}}, n);
        Framing f = frenet_framing(knot);
        suite.push_back({"torus_knot_2_3_frenet", make_ribbon(std::move(knot), std::move(f))});
    }
    return suite;
}

}  // namespace ribbon
