#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ribbon/curve.hpp"
#include "ribbon/errors.hpp"
#include "ribbon/framing.hpp"
#include "ribbon/tolerances.hpp"
#include "ribbon/vec3.hpp"

namespace ribbon {

enum class CrossingKind { local, nonlocal, edge_self };

inline const char* to_string(CrossingKind k) {
    switch (k) {
        case CrossingKind::local: return "local";
        case CrossingKind::nonlocal: return "nonlocal";
        default: return "edge_self";
    }
}

/// One signed crossing in a planar projection.
struct Crossing {
    CrossingKind kind = CrossingKind::nonlocal;
    int sign = 0;               // +1 right-handed, -1 left-handed
    double s = 0.0, sp = 0.0;   // parameter pair at the crossing
    double px = 0.0, py = 0.0;  // projected coordinates
};

struct CrossingTotals {
    int local = 0;
    int nonlocal = 0;
    int edge_self = 0;
    int between_edges() const { return local + nonlocal; }
};

/// All crossings seen from one projection direction.
struct CrossingReport {
    Vec3 direction;
    std::vector<Crossing> crossings;
    CrossingTotals totals;

    void recompute_totals() {
        totals = {};
        for (const auto& c : crossings) {
            switch (c.kind) {
                case CrossingKind::local: totals.local += c.sign; break;
                case CrossingKind::nonlocal: totals.nonlocal += c.sign; break;
                case CrossingKind::edge_self: totals.edge_self += c.sign; break;
            }
        }
    }
};

/// Monte-Carlo estimate over the direction sphere.
struct SphereAverage {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::size_t degenerate_redraws = 0;
};

namespace detail {

struct ProjectedCurve {
    std::vector<double> x, y, height;  // per sample; segment i spans i -> i+1 (cyclic)
};

struct ProjectionBasis {
    Vec3 e1, e2, o;
};

inline ProjectionBasis projection_basis(const Vec3& o_raw) {
    const Vec3 o = o_raw.normalized();
    Vec3 e1 = o.cross(Vec3{0, 0, 1});
    if (e1.norm() < 1e-6) e1 = o.cross(Vec3{1, 0, 0});
    e1 = e1.normalized();
    const Vec3 e2 = o.cross(e1);  // (e1, e2, o) right-handed
    return {e1, e2, o};
}

inline ProjectedCurve project(const ClosedCurve& c, const ProjectionBasis& basis) {
    ProjectedCurve p;
    const std::size_t n = c.size();
    p.x.resize(n); p.y.resize(n); p.height.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.x[i] = c[i].dot(basis.e1);
        p.y[i] = c[i].dot(basis.e2);
        p.height[i] = c[i].dot(basis.o);
    }
    return p;
}

inline void check_not_tangent(const ClosedCurve& c, const Vec3& o) {
    const double tol = tolerances().degenerate_direction;
    for (const Vec3& t : tangent_field(c)) {
        if (o.cross(t).norm() < tol)
            throw DegenerateDirection("projection direction within tolerance of a curve tangent");
    }
}

// Transversal intersection of projected segments (i on A, j on B).
// Returns true and fills the crossing; throws DegenerateDirection on
// endpoint-touching or grazing configurations.
inline bool segment_crossing(const ProjectedCurve& A, std::size_t i, const ProjectedCurve& B,
                             std::size_t j, Crossing& out) {
    const std::size_t na = A.x.size(), nb = B.x.size();
    const std::size_t i1 = (i + 1) % na, j1 = (j + 1) % nb;
    const double rx = A.x[i1] - A.x[i], ry = A.y[i1] - A.y[i];
    const double sx = B.x[j1] - B.x[j], sy = B.y[j1] - B.y[j];
    const double qx = B.x[j] - A.x[i], qy = B.y[j] - A.y[i];
    const double denom = rx * sy - ry * sx;
    const double tnum = qx * sy - qy * sx;
    const double unum = qx * ry - qy * rx;
    const double scale2 = (rx * rx + ry * ry) + (sx * sx + sy * sy);
    if (std::abs(denom) < 1e-14 * scale2) {
        // Parallel in projection: only troublesome if the segments are also
        // nearly collinear and overlapping.
        if (std::abs(unum) < 1e-12 * std::sqrt(scale2)) {
            const double alo = std::min({A.x[i], A.x[i1]}), ahi = std::max({A.x[i], A.x[i1]});
            const double blo = std::min({B.x[j], B.x[j1]}), bhi = std::max({B.x[j], B.x[j1]});
            const double alo2 = std::min({A.y[i], A.y[i1]}), ahi2 = std::max({A.y[i], A.y[i1]});
            const double blo2 = std::min({B.y[j], B.y[j1]}), bhi2 = std::max({B.y[j], B.y[j1]});
            if (ahi >= blo && bhi >= alo && ahi2 >= blo2 && bhi2 >= alo2)
                throw DegenerateDirection("collinear overlapping projected segments");
        }
        return false;
    }
    const double t = tnum / denom;
    const double u = unum / denom;
    constexpr double kEnd = 1e-9;
    if (t < -kEnd || t > 1.0 + kEnd || u < -kEnd || u > 1.0 + kEnd) return false;
    if (t < kEnd || t > 1.0 - kEnd || u < kEnd || u > 1.0 - kEnd)
        throw DegenerateDirection("projected crossing at a segment endpoint");

    const double ha = A.height[i] + t * (A.height[i1] - A.height[i]);
    const double hb = B.height[j] + u * (B.height[j1] - B.height[j]);
    if (std::abs(ha - hb) < 1e-12)
        throw DegenerateDirection("strands at equal depth at a projected crossing");
    // Sign convention: +1 when over-strand tangent crossed with under-strand
    // tangent points along +o, i.e. sign(cross2d(t_over, t_under)).
    const double cr = denom;  // cross2d(tangent_A, tangent_B)
    out.sign = (ha > hb) ? (cr > 0 ? 1 : -1) : (cr > 0 ? -1 : 1);
    out.s = (double(i) + t) / double(na);
    out.sp = (double(j) + u) / double(nb);
    out.px = A.x[i] + t * rx;
    out.py = A.y[i] + t * ry;
    return true;
}

inline void find_pair_crossings(const ProjectedCurve& A, const ProjectedCurve& B,
                                CrossingKind kind, std::vector<Crossing>& out) {
    const std::size_t na = A.x.size(), nb = B.x.size();
    for (std::size_t i = 0; i < na; ++i) {
        const std::size_t i1 = (i + 1) % na;
        const double xlo = std::min(A.x[i], A.x[i1]), xhi = std::max(A.x[i], A.x[i1]);
        const double ylo = std::min(A.y[i], A.y[i1]), yhi = std::max(A.y[i], A.y[i1]);
        for (std::size_t j = 0; j < nb; ++j) {
            const std::size_t j1 = (j + 1) % nb;
            if (std::min(B.x[j], B.x[j1]) > xhi || std::max(B.x[j], B.x[j1]) < xlo) continue;
            if (std::min(B.y[j], B.y[j1]) > yhi || std::max(B.y[j], B.y[j1]) < ylo) continue;
            Crossing c;
            if (segment_crossing(A, i, B, j, c)) {
                c.kind = kind;
                out.push_back(c);
            }
        }
    }
}

inline void find_self_crossings(const ProjectedCurve& A, std::vector<Crossing>& out) {
    const std::size_t n = A.x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t i1 = (i + 1) % n;
        const double xlo = std::min(A.x[i], A.x[i1]), xhi = std::max(A.x[i], A.x[i1]);
        const double ylo = std::min(A.y[i], A.y[i1]), yhi = std::max(A.y[i], A.y[i1]);
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // wrap-adjacent
            const std::size_t j1 = (j + 1) % n;
            if (std::min(A.x[j], A.x[j1]) > xhi || std::max(A.x[j], A.x[j1]) < xlo) continue;
            if (std::min(A.y[j], A.y[j1]) > yhi || std::max(A.y[j], A.y[j1]) < ylo) continue;
            Crossing c;
            if (segment_crossing(A, i, A, j, c)) {
                c.kind = CrossingKind::edge_self;
                out.push_back(c);
            }
        }
    }
}

// Deterministic uniform doubles from raw generator bits (distribution
// implementations are not portable across standard libraries).
struct DirectionSampler {
    std::uint64_t state;

    explicit DirectionSampler(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    double uniform() {  // [0, 1)
        // splitmix64
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return double(z >> 11) * 0x1.0p-53;
    }

    Vec3 direction() {
        const double z = 2.0 * uniform() - 1.0;
        const double phi = kTwoPi * uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }
};

}  // namespace detail

/// Local/nonlocal classification threshold in circular parameter distance:
/// 10 epsilon / min |a'|.
inline double local_threshold(const Ribbon& ribbon) {
    double min_speed = std::numeric_limits<double>::infinity();
    for (const Vec3& d : ribbon.axis.derivative()) min_speed = std::min(min_speed, d.norm());
    return 10.0 * ribbon.epsilon / min_speed;
}

inline double circular_distance(double s, double sp) {
    const double d = std::abs(s - sp);
    return std::min(d, 1.0 - d);
}

/// Project both curves along o and report every transversal crossing:
/// a-b crossings (kind nonlocal until classified) and self-crossings of each
/// curve (kind edge_self).
inline CrossingReport project_and_count(const ClosedCurve& a, const ClosedCurve& b, const Vec3& o) {
    const auto basis = detail::projection_basis(o);
    detail::check_not_tangent(a, basis.o);
    detail::check_not_tangent(b, basis.o);
    const auto pa = detail::project(a, basis);
    const auto pb = detail::project(b, basis);
    CrossingReport rep;
    rep.direction = basis.o;
    detail::find_pair_crossings(pa, pb, CrossingKind::nonlocal, rep.crossings);
    detail::find_self_crossings(pa, rep.crossings);
    detail::find_self_crossings(pb, rep.crossings);
    rep.recompute_totals();
    return rep;
}

/// Relabel the between-edge crossings of a ribbon projection as local or
/// nonlocal by circular parameter distance.
inline CrossingReport classify(CrossingReport report, const Ribbon& ribbon) {
    const double delta = local_threshold(ribbon);
    for (auto& c : report.crossings) {
        if (c.kind == CrossingKind::edge_self) continue;
        c.kind = (circular_distance(c.s, c.sp) <= delta) ? CrossingKind::local
                                                         : CrossingKind::nonlocal;
    }
    report.recompute_totals();
    return report;
}

/// Monte-Carlo average of `counter` over m seeded uniform directions.
/// Directions for which the counter reports a degenerate view are re-drawn.
inline SphereAverage sphere_average(const std::function<double(const Vec3&)>& counter,
                                    std::size_t m, std::uint64_t seed) {
    if (m < 100) throw BadParameter("sphere_average requires m >= 100");
    detail::DirectionSampler sampler(seed);
    std::vector<double> values;
    values.reserve(m);
    std::size_t degenerate = 0;
    const std::size_t max_degenerate = std::max<std::size_t>(10, m / 100);
    while (values.size() < m) {
        const Vec3 o = sampler.direction();
        try {
            values.push_back(counter(o));
        } catch (const DegenerateDirection&) {
            if (++degenerate > max_degenerate)
                throw TooManyRetries("more than 1% of sampled directions were degenerate");
        }
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= double(m);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var = (m > 1) ? var / double(m - 1) : 0.0;
    SphereAverage avg;
    avg.estimate = mean;
    avg.std_error = std::sqrt(var / double(m));
    avg.m = m;
    avg.seed = seed;
    avg.degenerate_redraws = degenerate;
    return avg;
}

/// Twist as half the direction-averaged signed local crossing count.
inline SphereAverage twist_mc(const Ribbon& ribbon, std::size_t m, std::uint64_t seed) {
    const ClosedCurve edge = edge_curve(ribbon);
    const double delta = local_threshold(ribbon);
    const auto ta = tangent_field(ribbon.axis);
    const auto tb = tangent_field(edge);
    auto counter = [&](const Vec3& o) -> double {
        const auto basis = detail::projection_basis(o);
        const double tol = tolerances().degenerate_direction;
        for (const Vec3& t : ta)
            if (basis.o.cross(t).norm() < tol) throw DegenerateDirection("tangent view");
        for (const Vec3& t : tb)
            if (basis.o.cross(t).norm() < tol) throw DegenerateDirection("tangent view");
        const auto pa = detail::project(ribbon.axis, basis);
        const auto pb = detail::project(edge, basis);
        std::vector<Crossing> crossings;
        detail::find_pair_crossings(pa, pb, CrossingKind::nonlocal, crossings);
        double local_sum = 0.0;
        for (const auto& c : crossings)
            if (circular_distance(c.s, c.sp) <= delta) local_sum += c.sign;
        return local_sum;
    };
    SphereAverage avg = sphere_average(counter, m, seed);
    avg.estimate /= 2.0;
    avg.std_error /= 2.0;
    return avg;
}

/// Writhe as the direction-averaged signed self-crossing count (no halving).
inline SphereAverage writhe_mc(const ClosedCurve& curve, std::size_t m, std::uint64_t seed) {
    const auto tc = tangent_field(curve);
    auto counter = [&](const Vec3& o) -> double {
        const auto basis = detail::projection_basis(o);
        const double tol = tolerances().degenerate_direction;
        for (const Vec3& t : tc)
            if (basis.o.cross(t).norm() < tol) throw DegenerateDirection("tangent view");
        const auto pc = detail::project(curve, basis);
        std::vector<Crossing> crossings;
        detail::find_self_crossings(pc, crossings);
        double sum = 0.0;
        for (const auto& c : crossings) sum += c.sign;
        return sum;
    };
    return sphere_average(counter, m, seed);
}

}  // namespace ribbon
