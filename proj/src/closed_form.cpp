#include "geosteer/closed_form.hpp"

#include <cmath>
#include <sstream>

#include "geosteer/curvature.hpp"
#include "geosteer/errors.hpp"

namespace geosteer {

PhasePoint phase_at(const ClosedFormParams& params, double t) {
    const double s = t + params.c2;
    if (params.c1 == 0.0) {
        if (s == 0.0)
            throw DomainError("phase_at: degenerate parameters (c1 = 0 and t + c2 = 0)");
        return {{std::abs(s), params.c3}, {s > 0.0 ? 1.0 : -1.0, 0.0}};
    }
    const double r = std::hypot(s, params.c1);
    // asinh(s/|c1|) scaled by c1: equal to the log form for c1 > 0, and the
    // odd extension keeps q2dot = c1/q1 when c1 < 0.
    return {{r, params.c1 * std::asinh(s / std::abs(params.c1)) + params.c3},
            {s / r, params.c1 / r}};
}

Control controls_at(const ClosedFormParams& params, double t) {
    const PhasePoint pt = phase_at(params, t);
    const double q1 = pt.state.q1, q2 = pt.state.q2;
    const double p1 = pt.costate.p1, p2 = pt.costate.p2;
    return {p1 * q1 + p2 * q2, p1 * q2 - p2 * q1};
}

double control_rate_u1(const ClosedFormParams& params, double t) {
    const double s = t + params.c2;
    if (params.c1 == 0.0) {
        if (s == 0.0)
            throw DomainError("control_rate_u1: degenerate parameters (c1 = 0 and t + c2 = 0)");
        return 1.0;
    }
    const double r = std::hypot(s, params.c1);
    const double q2 = phase_at(params, t).state.q2;
    return 1.0 + params.c1 * params.c1 / (r * r) - params.c1 * s * q2 / (r * r * r);
}

namespace {

double clamped_u1(const ClosedFormParams& params, double t) {
    const double u1 = controls_at(params, t).u1;
    if (std::abs(u1) > 1.0 + kArccosClamp) {
        std::ostringstream msg;
        msg << "closed form left the unit-control regime: u1 = " << u1 << " at t = " << t;
        throw DomainError(msg.str());
    }
    return std::clamp(u1, -1.0, 1.0);
}

}  // namespace

double theta_at(const ClosedFormParams& params, double t) {
    return std::acos(clamped_u1(params, t));
}

double theta_dot_at(const ClosedFormParams& params, double t) {
    const double u1 = clamped_u1(params, t);
    const double denom2 = 1.0 - u1 * u1;
    if (denom2 <= 0.0) {
        std::ostringstream msg;
        msg << "theta_dot_at: |u1| = 1 at t = " << t << " (denominator vanishes)";
        throw SingularityError(msg.str());
    }
    return -control_rate_u1(params, t) / std::sqrt(denom2);
}

double kappa_g_at(const ClosedFormParams& params, double t) {
    // The frame's bracket vanishes identically, so c1 = c2 = 0 here.
    return geodesic_curvature(theta_dot_at(params, t), theta_at(params, t), 0.0, 0.0);
}

}  // namespace geosteer
