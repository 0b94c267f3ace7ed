#pragma once

#include "geosteer/frame.hpp"

namespace geosteer {

/// Lie bracket of the frame expanded back in the frame:
/// [f1,f2] = c1 f1 + c2 f2 at the evaluation point.
struct StructureData {
    Vec2 bracket;
    double c1 = 0.0;
    double c2 = 0.0;
    double gram_det = 0.0;
};

/// [f1,f2](q) = J2(q) f1(q) - J1(q) f2(q).
Vec2 lie_bracket(const FrameField& frame, const State& q);

/// Solves [f1,f2] = c1 f1 + c2 f2 via the Gram normal equations, using the
/// orthogonal-projection shortcut c_i = <bracket, f_i>/|f_i|^2 when
/// |<f1,f2>| <= 1e-12 |f1||f2|. Throws DegenerateFrameError (carrying the
/// Gram determinant) below the degeneracy threshold.
StructureData structure_functions(const FrameField& frame, const State& q);

/// Gaussian curvature kappa = f1(c2) - f2(c1) - c1^2 - c2^2, with the
/// directional derivatives f_i(c_j) taken by central differences along
/// f_i(q): step fd_step(q) along the normalized direction, scaled back by
/// |f_i(q)|. Every stencil point must stay inside the frame's domain.
double gaussian_curvature(const FrameField& frame, const State& q);

/// kappa_g = theta_dot - c1 cos(theta) - c2 sin(theta).
double geodesic_curvature(double theta_dot, double theta, double c1, double c2);

}  // namespace geosteer
