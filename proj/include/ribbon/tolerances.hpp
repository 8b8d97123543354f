#pragma once

namespace ribbon {

/// Library-wide tolerance constants.  Defaults are fixed; callers that need
/// different thresholds mutate the singleton before doing any geometry.
struct Tolerances {
    double unit_norm = 1e-12;        // |u| == 1 slack
    double perpendicular = 1e-10;    // u.t == 0 slack
    double self_intersect = 1e-9;    // min non-adjacent segment separation
    double zero_derivative = 1e-12;  // |da/ds| considered zero
    double flat_normal = 1e-8;       // |dt/ds| below which Frenet normal undefined
    double curves_too_close = 1e-9;  // hard floor for Gauss linking separation
    double projection = 1e-12;       // 2d orientation-test slack
    double degenerate_direction = 1e-6;  // angular distance of o from a tangent
    double lk_integer_flag = 0.01;   // |lk - round(lk)| flag threshold
    double residual_flag = 0.01;     // |lk - tw - wr| flag threshold
    double bisect_verify = 1e-6;     // residual area allowed at the bisecting phase
};

inline Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

}  // namespace ribbon
