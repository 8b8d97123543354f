#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ribbon/curve.hpp"
#include "ribbon/errors.hpp"
#include "ribbon/framing.hpp"
#include "ribbon/sphere.hpp"
#include "ribbon/vec3.hpp"

using namespace ribbon;

namespace {

std::vector<Vec3> circle_points(std::size_t n, double r = 1.0) {
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = kTwoPi * double(i) / double(n);
        pts.push_back({r * std::cos(s), r * std::sin(s), 0.0});
    }
    return pts;
}

// Smooth closed space curve with nonvanishing curvature, used as a generic
// test subject.
ClosedCurve wavy_circle(std::size_t n) {
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = kTwoPi * double(i) / double(n);
        pts.push_back({std::cos(s) * (1.0 + 0.2 * std::cos(3 * s)),
                       std::sin(s) * (1.0 + 0.2 * std::cos(3 * s)), 0.3 * std::sin(2 * s)});
    }
    return ClosedCurve::from_samples(std::move(pts), "wavy");
}

}  // namespace

TEST_CASE("periodic derivative is fourth-order accurate") {
    // d/ds exp(2*pi*i*s) style test: f(s) = (cos 2pi s, sin 2pi s, sin 4pi s)
    auto build = [](std::size_t n) {
        std::vector<Vec3> f(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = double(i) / double(n);
            f[i] = {std::cos(kTwoPi * s), std::sin(kTwoPi * s), std::sin(2 * kTwoPi * s)};
        }
        return f;
    };
    auto max_err = [&](std::size_t n) {
        auto d = periodic_derivative(build(n), 1.0 / double(n));
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = double(i) / double(n);
            const Vec3 exact{-kTwoPi * std::sin(kTwoPi * s), kTwoPi * std::cos(kTwoPi * s),
                             2 * kTwoPi * std::cos(2 * kTwoPi * s)};
            err = std::max(err, (d[i] - exact).norm());
        }
        return err;
    };
    const double e64 = max_err(64), e128 = max_err(128);
    CHECK(e128 < 1e-4);
    CHECK(e64 / e128 > 12.0);  // ~16x per halving of h
}

TEST_CASE("from_samples validates its input") {
    CHECK_NOTHROW(ClosedCurve::from_samples(circle_points(64)));
    CHECK_THROWS_AS(ClosedCurve::from_samples(circle_points(8)), TooFewSamples);

    // Repeated point makes a zero-length segment.
    auto dup = circle_points(64);
    dup[10] = dup[11];
    CHECK_THROWS_AS(ClosedCurve::from_samples(dup), DegenerateSegment);

    // An open arc: last-to-first gap far exceeds the median spacing.
    std::vector<Vec3> arc;
    for (std::size_t i = 0; i < 64; ++i) {
        const double s = kPi * double(i) / 64.0;  // half turn only
        arc.push_back({std::cos(s), std::sin(s), 0.0});
    }
    CHECK_THROWS_AS(ClosedCurve::from_samples(arc), NotClosed);

    // Figure-eight in the plane crosses itself.
    std::vector<Vec3> eight;
    for (std::size_t i = 0; i < 128; ++i) {
        const double s = kTwoPi * double(i) / 128.0;
        eight.push_back({std::sin(2 * s), std::sin(s), 0.0});
    }
    CHECK_THROWS_AS(ClosedCurve::from_samples(eight), SelfIntersecting);
}

TEST_CASE("parametric families match their defining formulas") {
    const std::size_t n = 256;
    const auto circle = ClosedCurve::from_parametric("circle", {{"radius", 2.0}}, n);
    for (std::size_t i = 0; i < n; i += 17) {
        const double s = kTwoPi * double(i) / double(n);
        CHECK((circle[i] - Vec3{2 * std::cos(s), 2 * std::sin(s), 0.0}).norm() < 1e-14);
    }

    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, n);
    for (std::size_t i = 0; i < n; i += 17) {
        const double s = kTwoPi * double(i) / double(n);
        const double w = 1.0 + 0.3 * std::sin(2 * s);
        const Vec3 expect{-0.3 * std::cos(2 * s), std::cos(s) * w, std::sin(s) * w};
        CHECK((fig2[i] - expect).norm() < 1e-14);
    }

    const auto knot = ClosedCurve::from_parametric("torus_knot", {{"p", 2.0}, {"q", 3.0}}, 512);
    CHECK(knot.size() == 512);
    CHECK(knot.min_nonadjacent_segment_distance() > 0.03);

    CHECK_THROWS_AS(ClosedCurve::from_parametric("klein_bagel", {}, n), UnknownFamily);
}

TEST_CASE("tangent field is unit, accurate, and reverses with orientation") {
    const std::size_t n = 256;
    const auto circle = ClosedCurve::from_parametric("circle", {}, n);
    const auto t = tangent_field(circle);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(t[i].norm() - 1.0) < 1e-12);
        const double s = kTwoPi * double(i) / double(n);
        CHECK((t[i] - Vec3{-std::sin(s), std::cos(s), 0.0}).norm() < 1e-6);
    }

    const auto curve = wavy_circle(n);
    const auto tr = tangent_field(curve.reversed());
    const auto tf = tangent_field(curve);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 mapped = tr[(n - i) % n];
        CHECK((mapped + tf[i]).norm() < 1e-9);
    }
}

TEST_CASE("tangent accuracy improves at fourth order on a space curve") {
    auto max_tangent_err = [](std::size_t n) {
        const auto c = ClosedCurve::from_parametric("paper_fig2", {}, n);
        const auto t = tangent_field(c);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = kTwoPi * double(i) / double(n);
            const double w = 1.0 + 0.3 * std::sin(2 * s);
            const double wd = 0.6 * std::cos(2 * s);
            const Vec3 d{0.6 * std::sin(2 * s), -std::sin(s) * w + std::cos(s) * wd,
                         std::cos(s) * w + std::sin(s) * wd};
            err = std::max(err, (t[i] - d.normalized()).norm());
        }
        return err;
    };
    const double e256 = max_tangent_err(256), e512 = max_tangent_err(512);
    CHECK(e512 < 1e-7);
    CHECK(e256 / e512 > 8.0);
}

TEST_CASE("normalize_framing projects, normalizes, and is idempotent") {
    const std::size_t n = 128;
    const auto curve = wavy_circle(n);
    const auto t = tangent_field(curve);
    std::vector<Vec3> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = Vec3{0.0, 0.0, 2.5} + t[i] * 0.4;
    const Framing u = normalize_framing(curve, raw);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(u[i].norm() - 1.0) < 1e-12);
        CHECK(std::abs(u[i].dot(t[i])) < 1e-10);
    }
    const Framing again = normalize_framing(curve, u.vectors());
    for (std::size_t i = 0; i < n; ++i) CHECK((again[i] - u[i]).norm() < 1e-12);

    // A raw vector parallel to the tangent has no normal component.
    std::vector<Vec3> bad(raw);
    bad[5] = t[5] * 3.0;
    CHECK_THROWS_AS(normalize_framing(curve, bad), ParallelToTangent);
}

TEST_CASE("frenet framing of a circle is the inward normal") {
    const std::size_t n = 256;
    const auto circle = ClosedCurve::from_parametric("circle", {}, n);
    const Framing u = frenet_framing(circle);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 inward = -circle[i].normalized();
        CHECK((u[i] - inward).norm() < 1e-5);
    }
}

TEST_CASE("frenet framing rejects straight stretches") {
    // Stadium: two semicircles joined by straight segments.  On the straight
    // parts the tangent is constant, so the principal normal is undefined.
    std::vector<Vec3> pts;
    const std::size_t per_part = 32;
    for (std::size_t i = 0; i < per_part; ++i)
        pts.push_back({2.0 * double(i) / per_part - 1.0, -1.0, 0.0});
    for (std::size_t i = 0; i < per_part; ++i) {
        const double a = -kPi / 2 + kPi * double(i) / per_part;
        pts.push_back({1.0 + std::cos(a), std::sin(a), 0.0});
    }
    for (std::size_t i = 0; i < per_part; ++i)
        pts.push_back({1.0 - 2.0 * double(i) / per_part, 1.0, 0.0});
    for (std::size_t i = 0; i < per_part; ++i) {
        const double a = kPi / 2 + kPi * double(i) / per_part;
        pts.push_back({-1.0 + std::cos(a), std::sin(a), 0.0});
    }
    const auto stadium = ClosedCurve::from_samples(std::move(pts), "stadium");
    CHECK_THROWS_AS(frenet_framing(stadium), UndefinedNormal);
}

TEST_CASE("turns framing winds the requested number of times") {
    const std::size_t n = 256;
    const auto circle = ClosedCurve::from_parametric("circle", {}, n);
    const auto t = tangent_field(circle);
    for (double k : {0.0, 1.0, 3.0, -2.0}) {
        const Framing u = turns_framing(circle, k);
        double total = 0.0;
        std::vector<double> angle(n);
        const Framing base = turns_framing(circle, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            angle[i] = std::atan2(u[i].dot(t[i].cross(base[i])), u[i].dot(base[i]));
        for (std::size_t i = 0; i < n; ++i)
            total += std::remainder(angle[(i + 1) % n] - angle[i], kTwoPi);
        CHECK(std::abs(total / kTwoPi - k) < 1e-9);
    }
}

TEST_CASE("ribbon construction bounds the offset") {
    const auto circle = ClosedCurve::from_parametric("circle", {}, 128);
    const Framing u = turns_framing(circle, 0.0);
    CHECK_NOTHROW(make_ribbon(circle, u, 1e-3));
    CHECK_THROWS_AS(make_ribbon(circle, u, -0.5), BadParameter);
    // Offset must stay well below the curve's self-clearance.
    const double dmin = circle.min_nonadjacent_segment_distance();
    CHECK_THROWS_AS(make_ribbon(circle, u, 0.5 * dmin), BadParameter);
    const Ribbon def = make_ribbon(circle, u);
    CHECK(def.epsilon == doctest::Approx(1e-3 * dmin).epsilon(1e-9));
}

TEST_CASE("edge curve sits at exact offset from the axis") {
    const std::size_t n = 256;
    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, n);
    const Framing u = frenet_framing(fig2);
    const double eps = 1e-3;
    const Ribbon ribbon = make_ribbon(fig2, u, eps);
    const ClosedCurve edge = edge_curve(ribbon);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs((edge[i] - fig2[i]).norm() - eps) < 1e-12);
    // Zero-offset diagnostic curve coincides with the axis.
    const ClosedCurve zero = offset_curve(fig2, u, 0.0);
    for (std::size_t i = 0; i < n; ++i) CHECK((zero[i] - fig2[i]).norm() == 0.0);
}

TEST_CASE("spherical loop area: equator, octant, and degenerate loops") {
    std::vector<Vec3> eq;
    for (std::size_t i = 0; i < 64; ++i) {
        const double s = kTwoPi * double(i) / 64.0;
        eq.push_back({std::cos(s), std::sin(s), 0.0});
    }
    CHECK(spherical_loop_area(SphericalPolyline::make(eq, true)) == doctest::Approx(kTwoPi).epsilon(1e-9));

    // Octant bounded by three quarter-great-circles: area pi/2.
    std::vector<Vec3> oct;
    const std::size_t m = 48;
    for (std::size_t i = 0; i < m; ++i) {
        const double a = (kPi / 2) * double(i) / double(m);
        oct.push_back({std::cos(a), std::sin(a), 0.0});
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double a = (kPi / 2) * double(i) / double(m);
        oct.push_back({0.0, std::cos(a), std::sin(a)});
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double a = (kPi / 2) * double(i) / double(m);
        oct.push_back({std::sin(a), 0.0, std::cos(a)});
    }
    CHECK(spherical_loop_area(SphericalPolyline::make(oct, true)) ==
          doctest::Approx(kPi / 2).epsilon(1e-6));

    // Out-and-back arc encloses nothing.
    std::vector<Vec3> hairpin;
    for (std::size_t i = 0; i <= 20; ++i) {
        const double a = 0.8 * double(i) / 20.0;
        hairpin.push_back({std::cos(a), std::sin(a), 0.0});
    }
    for (std::size_t i = 19; i > 0; --i) {
        const double a = 0.8 * double(i) / 20.0;
        hairpin.push_back({std::cos(a), std::sin(a), 0.0});
    }
    CHECK(std::abs(spherical_loop_area(SphericalPolyline::make(hairpin, true))) < 1e-9);
}

TEST_CASE("spherical loop area flips under reversal and survives rotation") {
    std::vector<Vec3> loop;
    for (std::size_t i = 0; i < 96; ++i) {
        const double s = kTwoPi * double(i) / 96.0;
        Vec3 p{std::cos(s), std::sin(s), 0.6 + 0.3 * std::sin(3 * s)};
        loop.push_back(p.normalized());
    }
    const double area = spherical_loop_area(SphericalPolyline::make(loop, true));
    CHECK(std::abs(area) > 0.1);

    std::vector<Vec3> rev(loop.rbegin(), loop.rend());
    CHECK(spherical_loop_area(SphericalPolyline::make(rev, true)) ==
          doctest::Approx(-area).epsilon(1e-12));

    const Vec3 axis = Vec3{1.0, 2.0, -0.5}.normalized();
    std::vector<Vec3> rot;
    for (const auto& p : loop) rot.push_back(rotate_about(p, axis, 1.234));
    for (auto& p : rot) p = p.normalized();
    CHECK(spherical_loop_area(SphericalPolyline::make(rot, true)) ==
          doctest::Approx(area).epsilon(1e-9));
}

TEST_CASE("spherical polyline rejects non-unit points and antipodal edges") {
    std::vector<Vec3> bad = {{1, 0, 0}, {0, 2, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(SphericalPolyline::make(bad, true), BadParameter);
    std::vector<Vec3> anti = {{1, 0, 0}, {-1, 0, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(SphericalPolyline::make(anti, true), AntipodalEdge);
}

TEST_CASE("arclength resampling equalizes spacing") {
    const auto curve = wavy_circle(256);
    const auto even = resample_arclength(curve, 256);
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < even.size(); ++i) {
        const double d = (even[(i + 1) % even.size()] - even[i]).norm();
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    CHECK((hi - lo) / hi < 0.01);
}
