#pragma once

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ribbon/crossings.hpp"
#include "ribbon/curve.hpp"
#include "ribbon/errors.hpp"
#include "ribbon/framing.hpp"
#include "ribbon/invariants.hpp"
#include "ribbon/vec3.hpp"

namespace ribbon {

using nlohmann::json;

inline json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

inline Vec3 vec3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw BadParameter("expected a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

/// Curve document: {"name":..., "samples":[[x,y,z],...]} or
/// {"name":..., "parametric":{"family":..., "params":{...}, "n":...}}.
inline json curve_to_json(const ClosedCurve& curve) {
    json samples = json::array();
    for (const auto& p : curve.samples()) samples.push_back(to_json(p));
    return json{{"name", curve.name()}, {"samples", std::move(samples)}};
}

inline ClosedCurve curve_from_json(const json& j) {
    const std::string name = j.value("name", "curve");
    if (j.contains("parametric")) {
        const json& p = j.at("parametric");
        std::map<std::string, double> params;
        if (p.contains("params"))
            for (const auto& [key, val] : p.at("params").items())
                params[key] = val.get<double>();
        return ClosedCurve::from_parametric(p.at("family").get<std::string>(), params,
                                            p.at("n").get<std::size_t>());
    }
    if (!j.contains("samples")) throw BadParameter("curve document needs samples or parametric");
    std::vector<Vec3> pts;
    for (const auto& s : j.at("samples")) {
        const Vec3 v = vec3_from_json(s);
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
            throw BadParameter("non-finite coordinate in curve samples");
        pts.push_back(v);
    }
    return ClosedCurve::from_samples(std::move(pts), name);
}

inline ClosedCurve load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParameter("cannot open curve file: " + path);
    json j;
    in >> j;
    return curve_from_json(j);
}

/// Framing document: {"name":..., "u0":[[x,y,z],...]}.
inline json framing_to_json(const std::string& name, const Framing& framing) {
    json u = json::array();
    for (const auto& v : framing.vectors()) u.push_back(to_json(v));
    return json{{"name", name}, {"u0", std::move(u)}};
}

inline Framing framing_from_json(const ClosedCurve& curve, const json& j) {
    const json& arr = j.contains("u0") ? j.at("u0") : j.at("u");
    std::vector<Vec3> raw;
    for (const auto& v : arr) raw.push_back(vec3_from_json(v));
    return normalize_framing(curve, raw);
}

inline Framing load_framing(const ClosedCurve& curve, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParameter("cannot open framing file: " + path);
    json j;
    in >> j;
    return framing_from_json(curve, j);
}

inline json report_to_json(const InvariantReport& rep) {
    return json{{"lk_gauss", rep.lk_gauss}, {"lk_rounded", rep.lk_rounded},
                {"tw", rep.tw},             {"wr", rep.wr},
                {"residual", rep.residual}, {"n", rep.n},
                {"diagnostics", rep.diagnostics}};
}

inline json crossing_report_to_json(const CrossingReport& rep) {
    json crossings = json::array();
    for (const auto& c : rep.crossings) {
        crossings.push_back(json{{"kind", to_string(c.kind)},
                                 {"sign", c.sign},
                                 {"s", c.s},
                                 {"sp", c.sp},
                                 {"position", json::array({c.px, c.py})}});
    }
    return json{{"direction", to_json(rep.direction)},
                {"crossings", std::move(crossings)},
                {"totals",
                 json{{"local", rep.totals.local},
                      {"nonlocal", rep.totals.nonlocal},
                      {"edge_self", rep.totals.edge_self},
                      {"between_edges", rep.totals.between_edges()}}}};
}

inline json sphere_average_to_json(const SphereAverage& avg) {
    return json{{"estimate", avg.estimate},
                {"std_error", avg.std_error},
                {"m", avg.m},
                {"seed", avg.seed},
                {"degenerate_redraws", avg.degenerate_redraws}};
}

}  // namespace ribbon
