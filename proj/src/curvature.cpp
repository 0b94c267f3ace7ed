#include "geosteer/curvature.hpp"

#include <cmath>
#include <sstream>

#include "geosteer/errors.hpp"

namespace geosteer {

Vec2 lie_bracket(const FrameField& frame, const State& q) {
    frame.require_valid(q);
    return frame.jac2(q) * frame.f1(q) - frame.jac1(q) * frame.f2(q);
}

StructureData structure_functions(const FrameField& frame, const State& q) {
    const double gram = frame.gram_det(q);
    if ((frame.domain_guard && !frame.domain_guard(q)) ||
        gram <= kDegeneracyEps * kDegeneracyEps) {
        std::ostringstream msg;
        msg << "structure_functions: frame '" << frame.name << "' degenerate at q = ("
            << q.q1 << ", " << q.q2 << "), gram determinant " << gram;
        throw DegenerateFrameError(msg.str(), q.q1, q.q2, gram);
    }
    const Vec2 b = lie_bracket(frame, q);
    const Vec2 v1 = frame.f1(q);
    const Vec2 v2 = frame.f2(q);
    const double g11 = norm2(v1), g22 = norm2(v2), g12 = dot(v1, v2);

    StructureData out;
    out.bracket = b;
    out.gram_det = gram;
    if (std::abs(g12) <= 1e-12 * std::sqrt(g11 * g22)) {
        out.c1 = dot(b, v1) / g11;
        out.c2 = dot(b, v2) / g22;
    } else {
        const Vec2 c = solve2x2({g11, g12, g12, g22}, {dot(b, v1), dot(b, v2)});
        out.c1 = c.x;
        out.c2 = c.y;
    }
    return out;
}

double gaussian_curvature(const FrameField& frame, const State& q) {
    const StructureData at_q = structure_functions(frame, q);
    const double h = fd_step(q);

    // f_i(c_j): central difference of the structure functions along f_i.
    const auto directional = [&](const Vec2& dir) {
        const double len = norm(dir);
        const Vec2 u = dir * (1.0 / len);
        const State qp{q.q1 + h * u.x, q.q2 + h * u.y};
        const State qm{q.q1 - h * u.x, q.q2 - h * u.y};
        const StructureData sp = structure_functions(frame, qp);
        const StructureData sm = structure_functions(frame, qm);
        return Vec2{(sp.c1 - sm.c1) / (2.0 * h) * len, (sp.c2 - sm.c2) / (2.0 * h) * len};
    };

    const Vec2 d1 = directional(frame.f1(q));  // (f1(c1), f1(c2))
    const Vec2 d2 = directional(frame.f2(q));  // (f2(c1), f2(c2))
    return d1.y - d2.x - at_q.c1 * at_q.c1 - at_q.c2 * at_q.c2;
}

double geodesic_curvature(double theta_dot, double theta, double c1, double c2) {
    return theta_dot - c1 * std::cos(theta) - c2 * std::sin(theta);
}

}  // namespace geosteer
