#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ribbon/crossings.hpp"
#include "ribbon/errors.hpp"
#include "ribbon/invariants.hpp"
#include "ribbon/writhe_framing.hpp"

using namespace ribbon;

namespace {

// Independent linking oracle: trapezoid rule on the Gauss double integral,
// valid when the two curves are well separated relative to the sample spacing.
double gauss_linking_trapezoid(const ClosedCurve& a, const ClosedCurve& b) {
    const auto& da = a.derivative();
    const auto& db = b.derivative();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Vec3 r = a[i] - b[j];
            const double d = r.norm();
            sum += triple(da[i], db[j], r) / (d * d * d);
        }
    }
    return sum * a.h() * b.h() / kFourPi;
}

// Hopf-style pair: unit circle in the xy-plane and a unit circle in the
// xz-plane centered at (1,0,0), passing through the first circle's center.
std::pair<ClosedCurve, ClosedCurve> hopf_pair(std::size_t n) {
    std::vector<Vec3> a, b;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = kTwoPi * double(i) / double(n);
        a.push_back({std::cos(s), std::sin(s), 0.0});
        b.push_back({1.0 + std::cos(s), 0.0, std::sin(s)});
    }
    return {ClosedCurve::from_samples(std::move(a), "hopf_a"),
            ClosedCurve::from_samples(std::move(b), "hopf_b")};
}

}  // namespace

TEST_CASE("twist of turns framings on a circle") {
    const auto circle = ClosedCurve::from_parametric("circle", {}, 512);
    CHECK(std::abs(twist(circle, turns_framing(circle, 0.0))) < 1e-10);
    for (double k : {1.0, 3.0, -2.0})
        CHECK(std::abs(twist(circle, turns_framing(circle, k)) - k) < 1e-5);
}

TEST_CASE("direction-sphere twist form agrees with the local formula") {
    const auto circle = ClosedCurve::from_parametric("circle", {}, 256);
    const Framing u2 = turns_framing(circle, 2.0);
    CHECK(twist_local_form(circle, u2, 64) == doctest::Approx(twist(circle, u2)).epsilon(1e-6));

    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, 256);
    const Framing uf = frenet_framing(fig2);
    CHECK(twist_local_form(fig2, uf, 128) == doctest::Approx(twist(fig2, uf)).epsilon(1e-6));

    // Pointwise: the theta-integrated integrand matches the plain integrand
    // at every sample.
    double max_diff = 0.0;
    for (std::size_t i = 0; i < fig2.size(); ++i) {
        const auto [lhs, rhs] = twist_integrand_pair(fig2, uf, i, 128);
        max_diff = std::max(max_diff, std::abs(lhs - rhs));
    }
    CHECK(max_diff < 1e-6);
}

TEST_CASE("writhe vanishes for planar curves and flips under mirroring") {
    const auto circle = ClosedCurve::from_parametric("circle", {}, 256);
    CHECK(std::abs(writhe(circle)) < 1e-10);

    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, 512);
    const double wr = writhe(fig2);
    CHECK(std::abs(wr) > 0.01);  // genuinely nonplanar
    CHECK(writhe(fig2.mirrored()) == doctest::Approx(-wr).epsilon(1e-12));
    CHECK(writhe(fig2.reversed()) == doctest::Approx(wr).epsilon(1e-12));
}

TEST_CASE("writhe integrand vanishes linearly near the diagonal") {
    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, 1024);
    const std::size_t i = 100;
    CHECK(writhe_integrand(fig2, i, i) == 0.0);
    const double w1 = writhe_integrand(fig2, i, i + 1);
    const double w2 = writhe_integrand(fig2, i, i + 2);
    const double w4 = writhe_integrand(fig2, i, i + 4);
    REQUIRE(std::abs(w1) > 0.0);
    CHECK(w2 / w1 == doctest::Approx(2.0).epsilon(0.05));
    CHECK(w4 / w2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("writhe against its Monte-Carlo crossing oracle") {
    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, 256);
    const double wr = writhe(fig2);
    const SphereAverage mc = writhe_mc(fig2, 4000, 7);
    CHECK(std::abs(mc.estimate - wr) < 3.0 * mc.std_error + 1e-3);
}

TEST_CASE("gauss linking of unlinked and Hopf-linked circles") {
    std::vector<Vec3> far;
    for (std::size_t i = 0; i < 128; ++i) {
        const double s = kTwoPi * double(i) / 128.0;
        far.push_back({5.0 + std::cos(s), std::sin(s), 0.0});
    }
    const auto a = ClosedCurve::from_parametric("circle", {}, 128);
    const auto b = ClosedCurve::from_samples(std::move(far), "far");
    CHECK(std::abs(gauss_linking(a, b)) < 1e-9);

    const auto [ha, hb] = hopf_pair(256);
    const double lk = gauss_linking(ha, hb);
    CHECK(std::abs(std::abs(lk) - 1.0) < 1e-9);

    // Independent oracles: trapezoid quadrature and a projection crossing count.
    CHECK(gauss_linking_trapezoid(ha, hb) == doctest::Approx(lk).epsilon(1e-4));
    const Vec3 o = Vec3{0.13, 0.21, 0.96}.normalized();
    const CrossingReport rep = project_and_count(ha, hb, o);
    int signed_total = 0;
    for (const auto& c : rep.crossings)
        if (c.kind != CrossingKind::edge_self) signed_total += c.sign;
    CHECK(signed_total == 2 * int(std::lround(lk)));
}

TEST_CASE("gauss linking equals the framing turn count for ribbon edges") {
    const auto circle = ClosedCurve::from_parametric("circle", {}, 512);
    for (double k : {0.0, 1.0, 3.0, -2.0}) {
        const Ribbon r = make_ribbon(circle, turns_framing(circle, k));
        const double lk = gauss_linking(r.axis, edge_curve(r));
        CHECK(std::abs(lk - k) < 1e-6);
    }
}

TEST_CASE("gauss linking symmetry and orientation rules") {
    const auto [ha, hb] = hopf_pair(256);
    const double lk = gauss_linking(ha, hb);
    CHECK(gauss_linking(hb, ha) == doctest::Approx(lk).epsilon(1e-12));
    CHECK(gauss_linking(ha.reversed(), hb) == doctest::Approx(-lk).epsilon(1e-12));
    CHECK(gauss_linking(ha.reversed(), hb.reversed()) == doctest::Approx(lk).epsilon(1e-12));
    CHECK(gauss_linking(ha.mirrored(), hb.mirrored()) == doctest::Approx(-lk).epsilon(1e-12));
    CHECK_THROWS_AS(gauss_linking(ha, ha), CurvesTooClose);
}

TEST_CASE("analyze closes the Lk = Tw + Wr ledger") {
    const auto circle = ClosedCurve::from_parametric("circle", {}, 512);
    for (double k : {0.0, 1.0, 3.0, -2.0}) {
        const InvariantReport rep = analyze(make_ribbon(circle, turns_framing(circle, k)));
        CHECK(rep.lk_rounded == std::lround(k));
        CHECK(rep.tw == doctest::Approx(k).epsilon(1e-6));
        CHECK(std::abs(rep.wr) < 1e-8);
        CHECK(std::abs(rep.residual) < 1e-4);
        CHECK_FALSE(rep.flagged());
    }

    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, 1024);
    const InvariantReport rep = analyze(make_ribbon(fig2, frenet_framing(fig2)));
    CHECK(std::abs(rep.lk_gauss - double(rep.lk_rounded)) < 1e-3);
    CHECK(std::abs(rep.residual) < 1e-3);
    CHECK_FALSE(rep.flagged());
    CHECK(rep.diagnostics.count("residual_half_n") == 1);
    CHECK(rep.diagnostics.count("tw_convergence") == 1);
}

TEST_CASE("halving the ribbon offset leaves the invariants unchanged") {
    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, 512);
    const Framing u = frenet_framing(fig2);
    const double eps = default_epsilon(fig2);
    const InvariantReport full = analyze(make_ribbon(fig2, u, eps));
    const InvariantReport half = analyze(make_ribbon(fig2, u, eps / 2));
    CHECK(half.lk_rounded == full.lk_rounded);
    CHECK(std::abs(half.tw - full.tw) < 1e-4);
    CHECK(std::abs(half.wr - full.wr) < 1e-12);  // wr depends only on the axis
}

TEST_CASE("twist and writhe both flip under mirroring, linking follows") {
    const auto fig2 = ClosedCurve::from_parametric("paper_fig2", {}, 512);
    const Framing u = frenet_framing(fig2);
    const Ribbon r = make_ribbon(fig2, u, 1e-3);
    const Ribbon rm = make_ribbon(fig2.mirrored(), u.mirrored(), 1e-3);
    CHECK(twist(rm.axis, rm.framing) == doctest::Approx(-twist(r.axis, r.framing)).epsilon(1e-12));
    CHECK(gauss_linking(rm.axis, edge_curve(rm)) ==
          doctest::Approx(-gauss_linking(r.axis, edge_curve(r))).epsilon(1e-9));
}
