#pragma once

#include "geosteer/frame.hpp"

namespace geosteer {

/// Tolerance band around |u1| = 1 inside which arccos arguments are clamped
/// instead of rejected.
inline constexpr double kArccosClamp = 1e-12;

/// Integration constants of the analytic extremal family.
/// c1 = 0 selects the straight-line limit q1 = |t + c2|, q2 = c3.
struct ClosedFormParams {
    double c1 = 1.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

/// Analytic extremal:
///   q1 = sqrt((t+c2)^2 + c1^2)
///   q2 = c1 asinh((t+c2)/c1) + c3    (the log form for c1 > 0)
///   p1 = (t+c2) / q1
///   p2 = c1 / q1
/// Throws DomainError when c1 = 0 and t + c2 = 0.
PhasePoint phase_at(const ClosedFormParams& params, double t);

/// Controls along the analytic extremal: u1 = p1 q1 + p2 q2,
/// u2 = p1 q2 - p2 q1 evaluated on phase_at's output.
Control controls_at(const ClosedFormParams& params, double t);

/// Analytic time derivative of u1 along the extremal.
double control_rate_u1(const ClosedFormParams& params, double t);

/// theta = arccos(u1), with u1 clamped to [-1, 1] when within kArccosClamp.
/// Throws DomainError when |u1| > 1 + kArccosClamp.
double theta_at(const ClosedFormParams& params, double t);

/// thetadot = -u1dot / sqrt(1 - u1^2) with the analytic u1dot.
/// Throws SingularityError when |u1| = 1, DomainError beyond the clamp band.
double theta_dot_at(const ClosedFormParams& params, double t);

/// Geodesic curvature of the extremal. The frame's structure functions
/// vanish, so this equals theta_dot_at.
double kappa_g_at(const ClosedFormParams& params, double t);

}  // namespace geosteer
