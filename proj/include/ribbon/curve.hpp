#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ribbon/errors.hpp"
#include "ribbon/sphere.hpp"
#include "ribbon/tolerances.hpp"
#include "ribbon/vec3.hpp"

namespace ribbon {

/// 4th-order central difference of a periodic sample field, grid spacing h.
/// Stencil [1, -8, 0, 8, -1] / 12h.
inline std::vector<Vec3> periodic_derivative(const std::vector<Vec3>& f, double h) {
    const std::size_t n = f.size();
    std::vector<Vec3> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& m2 = f[(i + n - 2) % n];
        const Vec3& m1 = f[(i + n - 1) % n];
        const Vec3& p1 = f[(i + 1) % n];
        const Vec3& p2 = f[(i + 2) % n];
        d[i] = (m2 - m1 * 8.0 + p1 * 8.0 - p2) / (12.0 * h);
    }
    return d;
}

namespace detail {

// Minimum distance between segments p1-p2 and q1-q2.
inline double segment_distance(const Vec3& p1, const Vec3& p2, const Vec3& q1, const Vec3& q2) {
    const Vec3 d1 = p2 - p1, d2 = q2 - q1, r = p1 - q1;
    const double a = d1.norm2(), e = d2.norm2(), f = d2.dot(r);
    double s = 0.0, t = 0.0;
    const double c = d1.dot(r);
    const double b = d1.dot(d2);
    const double denom = a * e - b * b;
    if (denom > 1e-30) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
    t = (e > 1e-30) ? std::clamp((b * s + f) / e, 0.0, 1.0) : 0.0;
    s = (a > 1e-30) ? std::clamp((b * t - c) / a, 0.0, 1.0) : 0.0;
    const Vec3 cp1 = p1 + d1 * s, cp2 = q1 + d2 * t;
    return (cp1 - cp2).norm();
}

}  // namespace detail

/// A closed space curve sampled at N points, parameter s_i = i/N on [0,1).
/// Sample N wraps to sample 0; the seam point is not duplicated.
class ClosedCurve {
public:
    static constexpr std::size_t kMinSamples = 16;

    static ClosedCurve from_samples(std::vector<Vec3> points, std::string name = "curve") {
        if (points.size() < kMinSamples)
            throw TooFewSamples("need at least 16 samples, got " + std::to_string(points.size()));
        const std::size_t n = points.size();

        std::vector<double> spacings(n);
        for (std::size_t i = 0; i < n; ++i)
            spacings[i] = (points[(i + 1) % n] - points[i]).norm();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (spacings[i] < 1e-14)
                throw DegenerateSegment("coincident consecutive samples at index " + std::to_string(i));
        }
        std::vector<double> sorted = spacings;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[n / 2];
        if (spacings[n - 1] < 1e-14)
            throw DegenerateSegment("seam point duplicated: last sample coincides with first");
        // Closure gap: the wrap segment should look like any other segment.
        if (spacings[n - 1] > 3.0 * median)
            throw NotClosed("gap between last and first sample exceeds the sample spacing");

        ClosedCurve c(std::move(points), std::move(name));
        if (c.min_nonadjacent_segment_distance() < tolerances().self_intersect)
            throw SelfIntersecting("non-adjacent segments closer than tolerance");
        return c;
    }

    /// Built-in parametric families, sampled uniformly in parameter.
    ///   circle:     radius (default 1)
    ///   paper_fig2: (-0.3 cos 2s, cos s (1+0.3 sin 2s), sin s (1+0.3 sin 2s))
    ///   torus_knot: p, q (coprime ints), R (default 2), r (default 0.8)
    static ClosedCurve from_parametric(const std::string& family,
                                       const std::map<std::string, double>& params,
                                       std::size_t n) {
        if (n < kMinSamples) throw TooFewSamples("need n >= 16");
        auto get = [&](const std::string& key, double dflt) {
            auto it = params.find(key);
            return it == params.end() ? dflt : it->second;
        };
        std::vector<Vec3> pts(n);
        if (family == "circle") {
            const double r = get("radius", 1.0);
            if (r <= 0) throw BadParameter("circle radius must be positive");
            for (std::size_t i = 0; i < n; ++i) {
                const double s = kTwoPi * double(i) / double(n);
                pts[i] = {r * std::cos(s), r * std::sin(s), 0.0};
            }
        } else if (family == "paper_fig2") {
            for (std::size_t i = 0; i < n; ++i) {
                const double s = kTwoPi * double(i) / double(n);
                const double w = 1.0 + 0.3 * std::sin(2 * s);
                pts[i] = {-0.3 * std::cos(2 * s), std::cos(s) * w, std::sin(s) * w};
            }
        } else if (family == "torus_knot") {
            const double p = get("p", 2.0), q = get("q", 3.0);
            const double R = get("R", 2.0), r = get("r", 0.8);
            if (p != std::round(p) || q != std::round(q) || p == 0 || q == 0)
                throw BadParameter("torus_knot p,q must be nonzero integers");
            if (R <= r || r <= 0) throw BadParameter("torus_knot requires R > r > 0");
            for (std::size_t i = 0; i < n; ++i) {
                const double s = kTwoPi * double(i) / double(n);
                const double w = R + r * std::cos(q * s);
                pts[i] = {w * std::cos(p * s), w * std::sin(p * s), r * std::sin(q * s)};
            }
        } else {
            throw UnknownFamily("unknown curve family: " + family);
        }
        return from_samples(std::move(pts), family);
    }

    std::size_t size() const { return samples_.size(); }
    double h() const { return 1.0 / double(samples_.size()); }
    double param(std::size_t i) const { return double(i) / double(samples_.size()); }
    const Vec3& operator[](std::size_t i) const { return samples_[i % samples_.size()]; }
    const std::vector<Vec3>& samples() const { return samples_; }
    const std::string& name() const { return name_; }

    /// da/ds on the periodic grid (s in [0,1)).
    const std::vector<Vec3>& derivative() const { return derivative_; }

    /// Minimum distance between segment pairs that do not share an endpoint.
    double min_nonadjacent_segment_distance() const {
        const std::size_t n = samples_.size();
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;  // wrap-adjacent
                const double d = detail::segment_distance(samples_[i], samples_[(i + 1) % n],
                                                          samples_[j], samples_[(j + 1) % n]);
                dmin = std::min(dmin, d);
            }
        }
        return dmin;
    }

    ClosedCurve reversed() const {
        std::vector<Vec3> rev(samples_.rbegin(), samples_.rend());
        std::rotate(rev.begin(), rev.end() - 1, rev.end());  // keep sample 0 fixed
        return ClosedCurve(std::move(rev), name_ + "_reversed");
    }

    ClosedCurve mirrored() const {
        std::vector<Vec3> m(samples_);
        for (auto& p : m) p.z = -p.z;
        return ClosedCurve(std::move(m), name_ + "_mirror");
    }

private:
    ClosedCurve(std::vector<Vec3> pts, std::string name)
        : samples_(std::move(pts)), name_(std::move(name)) {
        derivative_ = periodic_derivative(samples_, h());
    }

    std::vector<Vec3> samples_;
    std::string name_;
    std::vector<Vec3> derivative_;
};

/// Unit tangents t_i = a'_i / |a'_i|.
inline std::vector<Vec3> tangent_field(const ClosedCurve& curve) {
    const auto& d = curve.derivative();
    std::vector<Vec3> t(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double n = d[i].norm();
        if (n < tolerances().zero_derivative)
            throw ZeroDerivative("vanishing derivative at index " + std::to_string(i));
        t[i] = d[i] / n;
    }
    return t;
}

/// Resample to n points uniformly spaced in arc length (linear interpolation
/// along the polyline).  Conditioning utility only; invariants are
/// parameter-independent.
inline ClosedCurve resample_arclength(const ClosedCurve& curve, std::size_t n) {
    if (n < ClosedCurve::kMinSamples) throw TooFewSamples("need n >= 16");
    const std::size_t m = curve.size();
    std::vector<double> cum(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        cum[i + 1] = cum[i] + (curve[i + 1] - curve[i]).norm();
    const double total = cum[m];
    std::vector<Vec3> out(n);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double target = total * double(k) / double(n);
        while (seg + 1 < m && cum[seg + 1] <= target) ++seg;
        const double t = (target - cum[seg]) / (cum[seg + 1] - cum[seg]);
        out[k] = curve[seg] + (curve[seg + 1] - curve[seg]) * t;
    }
    return ClosedCurve::from_samples(std::move(out), curve.name() + "_arclen");
}

}  // namespace ribbon
