#pragma once

#include "geosteer/flow.hpp"

namespace geosteer {

/// Shooting-method settings. Seeds are multistart unit-circle directions
/// scaled so the initial control norm is 1 (arc-length normalization).
struct ShootingConfig {
    double tol = 1e-9;         ///< Euclidean endpoint residual target
    int max_iters = 50;        ///< Newton iterations per seed
    double fd_step = 1e-6;     ///< absolute differencing step on p0 components
    int multistart = 8;        ///< seed count on the unit circle
    IntegratorConfig integrator = {};
    double horizon = 1.0;      ///< terminal time (horizon 0 degenerates to identity)
    RhsKind rhs_kind = RhsKind::Full;
};

struct PlanResult {
    Costate p0;            ///< recovered initial costate
    Trajectory trajectory;
    double residual = 0.0;  ///< |q(T) - q_goal|
    int iterations = 0;
    bool converged = false;
    int seed_index = -1;    ///< winning multistart seed
};

/// Euclidean distance between the terminal and goal states.
double residual(const State& q_end, const State& q_goal);

/// Forward map: integrate the configured flow from (q0, p0) over
/// [0, horizon] and return the terminal state.
State shoot(const FrameField& frame, const State& q0, const Costate& p0,
            const ShootingConfig& cfg = {});

/// Damped-Newton shooting with multistart: finds p0 minimizing
/// |shoot(q0, p0) - q_goal|. Non-convergence is reported through
/// converged = false with the best residual; seeds whose flow leaves the
/// frame's domain are discarded. Deterministic: seeds are evaluated in
/// order and ties between converged seeds break by iteration count, then
/// smaller |p0|, then seed index.
PlanResult plan(const FrameField& frame, const State& q0, const State& q_goal,
                const ShootingConfig& cfg = {});

}  // namespace geosteer
