// Command-line surface for the ribbon geometry library: invariant analysis,
// Monte-Carlo crossing experiments, writhe-framing construction, and
// projection diagrams.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ribbon/ribbon.hpp"

namespace {

using namespace ribbon;

// Exit-code taxonomy, kept stable so CI can assert failure modes.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitFlaggedLk = 3;
constexpr int kExitMcRetries = 4;
constexpr int kExitFraming = 5;
constexpr int kExitProjection = 6;

struct CurveSpec {
    std::string family;  // or empty if input file given
    std::string input;
    std::size_t n = 1024;
};

// Family spec syntax: name, or name:a,b (torus_knot:p,q / circle:radius).
ClosedCurve build_curve(const CurveSpec& spec) {
    if (!spec.input.empty()) return load_curve(spec.input);
    std::string name = spec.family;
    std::map<std::string, double> params;
    if (auto colon = name.find(':'); colon != std::string::npos) {
        std::stringstream args(name.substr(colon + 1));
        name = name.substr(0, colon);
        std::vector<double> vals;
        for (std::string tok; std::getline(args, tok, ',');) vals.push_back(std::stod(tok));
        if (name == "circle" && vals.size() == 1) {
            params["radius"] = vals[0];
        } else if (name == "torus_knot" && vals.size() >= 2) {
            params["p"] = vals[0];
            params["q"] = vals[1];
            if (vals.size() > 2) params["R"] = vals[2];
            if (vals.size() > 3) params["r"] = vals[3];
        } else {
            throw BadParameter("bad family arguments: " + spec.family);
        }
    }
    if (name == "fig1") return fig1_axis(spec.n);
    return ClosedCurve::from_parametric(name, params, spec.n);
}

// Framing spec: frenet | turns:k | writhe | fig1 | file:PATH.
Framing build_framing(const ClosedCurve& curve, const std::string& spec) {
    if (spec == "frenet") return frenet_framing(curve);
    if (spec == "writhe") return writhe_framing(curve);
    if (spec == "fig1") return fig1_framing(curve);
    if (spec.rfind("turns:", 0) == 0) return turns_framing(curve, std::stod(spec.substr(6)));
    if (spec.rfind("file:", 0) == 0) return load_framing(curve, spec.substr(5));
    throw BadParameter("unknown framing spec: " + spec);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw BadParameter("cannot open output file: " + out_path);
        out << j.dump(2) << "\n";
    }
}

void emit_text(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadParameter("cannot open output file: " + path);
    out << text;
}

Vec3 parse_direction(const std::string& s) {
    std::stringstream ss(s);
    std::vector<double> vals;
    for (std::string tok; std::getline(ss, tok, ',');) vals.push_back(std::stod(tok));
    if (vals.size() != 3) throw BadParameter("--direction expects x,y,z");
    Vec3 o{vals[0], vals[1], vals[2]};
    if (o.norm() < 1e-12) throw BadParameter("--direction must be nonzero");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linking number, twist, and writhe of closed ribbons"};
    app.require_subcommand(1);

    CurveSpec curve_spec;
    std::string framing_spec = "frenet";
    double epsilon = 0.0;  // 0 = geometry-derived default
    std::size_t m = 20000;
    std::uint64_t seed = 0;
    std::size_t n_theta = 64;
    std::string direction_str = "0,0,1";
    std::string out_path, svg_path;

    auto add_common = [&](CLI::App* cmd, bool with_framing) {
        cmd->add_option("--family", curve_spec.family, "built-in curve family");
        cmd->add_option("--input", curve_spec.input, "curve JSON file");
        cmd->add_option("--n", curve_spec.n, "sample count");
        if (with_framing)
            cmd->add_option("--framing", framing_spec, "frenet|turns:k|writhe|fig1|file:PATH");
        cmd->add_option("--epsilon", epsilon, "ribbon offset (default from curve geometry)");
        cmd->add_option("--out", out_path, "JSON output path (default stdout)");
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "invariants and Calugareanu residual");
    add_common(analyze_cmd, true);
    analyze_cmd->add_option("--n-theta", n_theta, "theta quadrature points");

    auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo crossing averages vs quadrature");
    add_common(mc_cmd, true);
    mc_cmd->add_option("--m", m, "number of projection directions");
    mc_cmd->add_option("--seed", seed, "RNG seed");

    auto* frame_cmd = app.add_subcommand("frame", "construct the writhe framing");
    add_common(frame_cmd, false);
    frame_cmd->add_option("--svg", svg_path, "direction-sphere SVG output path");

    auto* project_cmd = app.add_subcommand("project", "crossing census for one direction");
    add_common(project_cmd, true);
    project_cmd->add_option("--direction", direction_str, "projection direction x,y,z");
    project_cmd->add_option("--svg", svg_path, "projection SVG output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze_cmd)) {
            ClosedCurve curve = build_curve(curve_spec);
            Framing framing = build_framing(curve, framing_spec);
            Ribbon ribbon = make_ribbon(std::move(curve), std::move(framing), epsilon);
            InvariantReport rep = analyze(ribbon);
            json j = report_to_json(rep);
            j["twist_sphere_form"] = twist_local_form(ribbon.axis, ribbon.framing, n_theta);
            emit(j, out_path);
            return rep.flagged() ? kExitFlaggedLk : kExitOk;
        }
        if (app.got_subcommand(mc_cmd)) {
            ClosedCurve curve = build_curve(curve_spec);
            Framing framing = build_framing(curve, framing_spec);
            Ribbon ribbon = make_ribbon(curve, framing, epsilon);
            const SphereAverage tm = twist_mc(ribbon, m, seed);
            const SphereAverage wm = writhe_mc(ribbon.axis, m, seed);
            const double tw = twist(ribbon.axis, ribbon.framing);
            const double wr = writhe(ribbon.axis);
            json j{{"twist_mc", sphere_average_to_json(tm)},
                   {"writhe_mc", sphere_average_to_json(wm)},
                   {"twist_quadrature", tw},
                   {"writhe_quadrature", wr},
                   {"z_twist", tm.std_error > 0 ? (tm.estimate - tw) / tm.std_error : 0.0},
                   {"z_writhe", wm.std_error > 0 ? (wm.estimate - wr) / wm.std_error : 0.0}};
            emit(j, out_path);
            return kExitOk;
        }
        if (app.got_subcommand(frame_cmd)) {
            ClosedCurve curve = build_curve(curve_spec);
            Framing u0 = writhe_framing(curve);
            InvariantReport rep = analyze(make_ribbon(curve, u0, epsilon));
            json j = framing_to_json(curve.name() + "_writhe_framing", u0);
            j["verify_zero_link"] = report_to_json(rep);
            emit(j, out_path);
            if (!svg_path.empty()) emit_text(sphere_svg(curve, 0), svg_path);
            return kExitOk;
        }
        if (app.got_subcommand(project_cmd)) {
            ClosedCurve curve = build_curve(curve_spec);
            Framing framing = build_framing(curve, framing_spec);
            Ribbon ribbon = make_ribbon(std::move(curve), std::move(framing), epsilon);
            const ClosedCurve edge = edge_curve(ribbon);
            const Vec3 o = parse_direction(direction_str);
            CrossingReport rep = classify(project_and_count(ribbon.axis, edge, o), ribbon);
            emit(crossing_report_to_json(rep), out_path);
            if (!svg_path.empty()) emit_text(projection_svg(ribbon.axis, edge, rep), svg_path);
            return kExitOk;
        }
    } catch (const TooManyRetries& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMcRetries;
    } catch (const DiscontinuousFraming& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFraming;
    } catch (const DegenerateDirection& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProjection;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
