#include "geosteer/planner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "geosteer/errors.hpp"

namespace geosteer {

double residual(const State& q_end, const State& q_goal) {
    return std::hypot(q_end.q1 - q_goal.q1, q_end.q2 - q_goal.q2);
}

namespace {

Trajectory single_point_trajectory(const FrameField& frame, const PhasePoint& pt,
                                   const ShootingConfig& cfg) {
    Trajectory traj;
    traj.meta = {cfg.integrator, cfg.rhs_kind, frame.name, 0.0, 0.0};
    traj.times.push_back(0.0);
    traj.points.push_back(pt);
    traj.controls.push_back(optimal_controls(frame, pt));
    traj.hamiltonian.push_back(traj.controls.back().norm2() * 0.5);
    return traj;
}

struct SeedOutcome {
    Costate p0;
    double residual;
    int iterations;
    bool converged;
    int seed_index;
};

bool better(const SeedOutcome& a, const SeedOutcome& b) {
    if (a.converged != b.converged) return a.converged;
    if (a.converged) {
        if (a.iterations != b.iterations) return a.iterations < b.iterations;
        const double na = a.p0.norm2(), nb = b.p0.norm2();
        if (na != nb) return na < nb;
        return a.seed_index < b.seed_index;
    }
    if (a.residual != b.residual) return a.residual < b.residual;
    return a.seed_index < b.seed_index;
}

}  // namespace

State shoot(const FrameField& frame, const State& q0, const Costate& p0,
            const ShootingConfig& cfg) {
    frame.require_valid(q0);
    if (cfg.horizon == 0.0) return q0;
    const Trajectory traj =
        integrate(cfg.rhs_kind, frame, {q0, p0}, 0.0, cfg.horizon, cfg.integrator);
    return traj.points.back().state;
}

PlanResult plan(const FrameField& frame, const State& q0, const State& q_goal,
                const ShootingConfig& cfg) {
    frame.require_valid(q0);
    frame.require_valid(q_goal);
    if (cfg.multistart < 1) throw std::invalid_argument("plan: multistart must be >= 1");
    if (cfg.tol <= 0.0) throw std::invalid_argument("plan: tol must be positive");

    if (cfg.horizon == 0.0) {
        const Costate p0{1.0, 0.0};
        PlanResult out;
        out.p0 = p0;
        out.residual = residual(q0, q_goal);
        out.iterations = 0;
        out.converged = out.residual <= cfg.tol;
        out.seed_index = 0;
        out.trajectory = single_point_trajectory(frame, {q0, p0}, cfg);
        return out;
    }

    // Endpoint mismatch for a candidate costate; infinity marks a flow that
    // left the domain or blew up.
    const auto eval = [&](const Costate& p) -> std::optional<Vec2> {
        try {
            const State end = shoot(frame, q0, p, cfg);
            const Vec2 r{end.q1 - q_goal.q1, end.q2 - q_goal.q2};
            if (!std::isfinite(r.x) || !std::isfinite(r.y)) return std::nullopt;
            return r;
        } catch (const IntegrationError&) {
            return std::nullopt;
        }
    };

    std::optional<SeedOutcome> best;
    for (int seed = 0; seed < cfg.multistart; ++seed) {
        const double phi =
            2.0 * std::numbers::pi * static_cast<double>(seed) / cfg.multistart;
        const Costate dir{std::cos(phi), std::sin(phi)};
        // Scale so |u(0)| = 1: the control law is linear in p.
        const Control u_unit = optimal_controls(frame, {q0, dir});
        const double scale = 1.0 / u_unit.norm();
        Costate p{dir.p1 * scale, dir.p2 * scale};

        auto res_vec = eval(p);
        if (!res_vec) continue;  // seed's flow left the domain
        double res = norm(*res_vec);
        int iters = 0;
        bool stalled = false;
        while (res > cfg.tol && iters < cfg.max_iters && !stalled) {
            // Forward-difference Jacobian of the endpoint map.
            const auto c1 = eval({p.p1 + cfg.fd_step, p.p2});
            const auto c2 = eval({p.p1, p.p2 + cfg.fd_step});
            if (!c1 || !c2) break;
            const Mat2 jac{(c1->x - res_vec->x) / cfg.fd_step,
                           (c2->x - res_vec->x) / cfg.fd_step,
                           (c1->y - res_vec->y) / cfg.fd_step,
                           (c2->y - res_vec->y) / cfg.fd_step};
            if (jac.det() == 0.0 || !std::isfinite(jac.det())) break;
            const Vec2 step = solve2x2(jac, -*res_vec);

            // Damping: halve up to 8 times until the residual decreases.
            double lambda = 1.0;
            stalled = true;
            for (int k = 0; k <= 8; ++k) {
                const Costate cand{p.p1 + lambda * step.x, p.p2 + lambda * step.y};
                if (const auto rv = eval(cand)) {
                    if (const double rn = norm(*rv); rn < res) {
                        p = cand;
                        res_vec = rv;
                        res = rn;
                        stalled = false;
                        break;
                    }
                }
                lambda *= 0.5;
            }
            ++iters;
        }
        const SeedOutcome outcome{p, res, iters, res <= cfg.tol, seed};
        if (!best || better(outcome, *best)) best = outcome;
    }

    if (!best)
        throw IntegrationError("plan: every multistart seed left the frame's domain", 0.0);

    PlanResult out;
    out.p0 = best->p0;
    out.residual = best->residual;
    out.iterations = best->iterations;
    out.converged = best->converged;
    out.seed_index = best->seed_index;
    out.trajectory =
        integrate(cfg.rhs_kind, frame, {q0, best->p0}, 0.0, cfg.horizon, cfg.integrator);
    return out;
}

}  // namespace geosteer
