#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ribbon/crossings.hpp"
#include "ribbon/curve.hpp"
#include "ribbon/sphere.hpp"
#include "ribbon/vec3.hpp"
#include "ribbon/writhe_framing.hpp"

namespace ribbon {
namespace svg_detail {

struct Viewport {
    double xmin, xmax, ymin, ymax;
    static constexpr double kSize = 640.0;
    static constexpr double kMargin = 32.0;

    double sx(double x) const {
        return kMargin + (x - xmin) / (xmax - xmin) * (kSize - 2 * kMargin);
    }
    double sy(double y) const {  // svg y grows downward
        return kSize - kMargin - (y - ymin) / (ymax - ymin) * (kSize - 2 * kMargin);
    }
};

inline Viewport fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    Viewport v{*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end()),
               *std::min_element(ys.begin(), ys.end()), *std::max_element(ys.begin(), ys.end())};
    const double spanx = std::max(v.xmax - v.xmin, 1e-9);
    const double spany = std::max(v.ymax - v.ymin, 1e-9);
    const double span = std::max(spanx, spany);
    const double cx = 0.5 * (v.xmin + v.xmax), cy = 0.5 * (v.ymin + v.ymax);
    v.xmin = cx - 0.55 * span; v.xmax = cx + 0.55 * span;
    v.ymin = cy - 0.55 * span; v.ymax = cy + 0.55 * span;
    return v;
}

inline void polyline(std::ostringstream& out, const Viewport& v, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& cls,
                     const std::string& stroke) {
    out << "  <polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i <= xs.size(); ++i) {
        const std::size_t k = i % xs.size();
        out << v.sx(xs[k]) << "," << v.sy(ys[k]) << " ";
    }
    out << "\"/>\n";
}

}  // namespace svg_detail

/// Orthographic SVG of a ribbon projection: the two edge polylines plus
/// sign/kind-labelled crossing markers.
inline std::string projection_svg(const ClosedCurve& a, const ClosedCurve& b,
                                  const CrossingReport& report) {
    using namespace svg_detail;
    const auto basis = detail::projection_basis(report.direction);
    const auto pa = detail::project(a, basis);
    const auto pb = detail::project(b, basis);
    std::vector<double> xs(pa.x), ys(pa.y);
    xs.insert(xs.end(), pb.x.begin(), pb.x.end());
    ys.insert(ys.end(), pb.y.begin(), pb.y.end());
    const Viewport v = fit(xs, ys);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Viewport::kSize
        << "\" height=\"" << Viewport::kSize << "\" viewBox=\"0 0 " << Viewport::kSize << " "
        << Viewport::kSize << "\">\n";
    polyline(out, v, pa.x, pa.y, "edge-a", "#1f77b4");
    polyline(out, v, pb.x, pb.y, "edge-b", "#d62728");
    for (const auto& c : report.crossings) {
        out << "  <circle class=\"crossing\" cx=\"" << v.sx(c.px) << "\" cy=\"" << v.sy(c.py)
            << "\" r=\"5\" fill=\"" << (c.sign > 0 ? "#2ca02c" : "#9467bd")
            << "\" data-sign=\"" << c.sign << "\" data-kind=\"" << to_string(c.kind)
            << "\" data-s=\"" << c.s << "\" data-sp=\"" << c.sp << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

/// Direction-sphere SVG (orthographic from +z): tangent indicatrix, one
/// chord fan, and its bisecting semicircle.
inline std::string sphere_svg(const ClosedCurve& curve, std::size_t fan_index) {
    using namespace svg_detail;
    const auto t = tangent_field(curve);
    const ChordFan fan = chord_fan(curve, fan_index);
    const double phi0 = bisecting_phase(fan);
    std::vector<Vec3> semi;
    semi.push_back(-fan.tangent());
    detail::append_semicircle(semi, fan.tangent(), phi0, 64);
    semi.push_back(fan.tangent());

    const double size = Viewport::kSize, r = size / 2 - Viewport::kMargin;
    auto sx = [&](const Vec3& p) { return size / 2 + r * p.x; };
    auto sy = [&](const Vec3& p) { return size / 2 - r * p.y; };
    auto draw = [&](std::ostringstream& out, const std::vector<Vec3>& pts, bool closed,
                    const std::string& cls, const std::string& stroke) {
        // split at front/back hemisphere changes so hidden arcs stay dashed
        out << "  <polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = closed ? pts.size() + 1 : pts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3& p = pts[i % pts.size()];
            out << sx(p) << "," << sy(p) << " ";
        }
        out << "\"/>\n";
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "  <circle cx=\"" << size / 2 << "\" cy=\"" << size / 2 << "\" r=\"" << r
        << "\" fill=\"none\" stroke=\"#999\"/>\n";
    std::vector<Vec3> neg_t(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) neg_t[i] = -t[i];
    draw(out, t, true, "tangent-indicatrix", "#000");
    draw(out, neg_t, true, "tangent-indicatrix-neg", "#444");
    draw(out, fan.fan.points, false, "chord-fan", "#d62728");
    draw(out, semi, false, "bisecting-semicircle", "#e377c2");
    out << "</svg>\n";
    return out.str();
}

}  // namespace ribbon
