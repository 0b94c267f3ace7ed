#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geosteer/linalg.hpp"

namespace geosteer {

/// Frames refuse evaluation where the Gram determinant
/// |f1|^2 |f2|^2 - <f1,f2>^2 falls to kDegeneracyEps^2 or below.
inline constexpr double kDegeneracyEps = 1e-9;

/// Position q = (q1, q2) on the plane.
struct State {
    double q1 = 0.0;
    double q2 = 0.0;

    Vec2 as_vec() const { return {q1, q2}; }
    bool finite() const { return std::isfinite(q1) && std::isfinite(q2); }
};

/// Momentum covector p = (p1, p2).
struct Costate {
    double p1 = 0.0;
    double p2 = 0.0;

    Vec2 as_vec() const { return {p1, p2}; }
    double norm2() const { return p1 * p1 + p2 * p2; }
    bool finite() const { return std::isfinite(p1) && std::isfinite(p2); }
};

/// Joint (q, p) point of the Hamiltonian phase space.
struct PhasePoint {
    State state;
    Costate costate;

    bool finite() const { return state.finite() && costate.finite(); }
};

/// Control pair (u1, u2).
struct Control {
    double u1 = 0.0;
    double u2 = 0.0;

    double norm2() const { return u1 * u1 + u2 * u2; }
    double norm() const { return std::hypot(u1, u2); }
};

/// Central-difference step: cbrt(eps) scaled by the max-norm of the point.
double fd_step(const State& q);

/// An ordered pair of vector fields spanning the tangent plane wherever
/// `domain_guard` holds, with Jacobians (row i = component, column j =
/// coordinate derivative). Evaluator-based so tests can inject custom frames.
struct FrameField {
    std::string name;
    std::function<Vec2(const State&)> f1;
    std::function<Vec2(const State&)> f2;
    std::function<Mat2(const State&)> jac1;
    std::function<Mat2(const State&)> jac2;
    std::function<bool(const State&)> domain_guard;

    /// Gram determinant |f1|^2 |f2|^2 - <f1,f2>^2 at q.
    double gram_det(const State& q) const;

    /// True where evaluation must be refused (guard fails or Gram
    /// determinant at or below kDegeneracyEps^2).
    bool degenerate_at(const State& q) const;

    /// Throws DegenerateFrameError when degenerate_at(q).
    void require_valid(const State& q) const;
};

/// The frame f1(q) = (q1, q2), f2(q) = (q2, -q1) with analytic Jacobians
/// (identity and [[0,1],[-1,0]]).
FrameField paper_frame();

/// Registry lookup: name in {paper, halfplane, grushin}.
/// Throws UnknownFrameError otherwise, listing the valid names.
FrameField builtin_frame(const std::string& name);

/// Names accepted by builtin_frame.
const std::vector<std::string>& builtin_frame_names();

/// Pairing <p, v> = p1 v1 + p2 v2 between a covector and a vector.
inline double frame_inner(const Costate& p, const Vec2& v) {
    return p.p1 * v.x + p.p2 * v.y;
}

/// Builds a Jacobian evaluator from a field evaluator by central
/// differences with step fd_step(q).
std::function<Mat2(const State&)> finite_difference_jacobian(
    std::function<Vec2(const State&)> f);

}  // namespace geosteer
