#include "geosteer/flow.hpp"

#include <cmath>
#include <sstream>

#include "geosteer/errors.hpp"

namespace geosteer {

Control optimal_controls(const FrameField& frame, const PhasePoint& pt) {
    frame.require_valid(pt.state);
    return {frame_inner(pt.costate, frame.f1(pt.state)),
            frame_inner(pt.costate, frame.f2(pt.state))};
}

double hamiltonian(const FrameField& frame, const PhasePoint& pt) {
    const Control u = optimal_controls(frame, pt);
    return 0.5 * u.norm2();
}

PhaseDeriv hamilton_rhs(const PhasePoint& pt) {
    static const FrameField paper = paper_frame();
    paper.require_valid(pt.state);
    const double q1 = pt.state.q1, q2 = pt.state.q2;
    const double p1 = pt.costate.p1, p2 = pt.costate.p2;
    const double qq = q1 * q1 + q2 * q2;
    return {p1 * qq,
            p2 * qq,
            -q1 * (p1 * p1 - p2 * p2) - 2.0 * p1 * p2 * q2,
            -q2 * (p2 * p2 - p1 * p1) - 2.0 * p1 * p2 * q1};
}

PhaseDeriv general_rhs(const FrameField& frame, const PhasePoint& pt) {
    frame.require_valid(pt.state);
    const Vec2 v1 = frame.f1(pt.state);
    const Vec2 v2 = frame.f2(pt.state);
    const double u1 = frame_inner(pt.costate, v1);
    const double u2 = frame_inner(pt.costate, v2);
    const Vec2 qdot = u1 * v1 + u2 * v2;
    const Vec2 p = pt.costate.as_vec();
    const Vec2 pdot = -(u1 * (frame.jac1(pt.state) * p)) - u2 * (frame.jac2(pt.state) * p);
    return {qdot.x, qdot.y, pdot.x, pdot.y};
}

PhaseDeriv reduced_rhs(const PhasePoint& pt) {
    const double q1 = pt.state.q1;
    if (std::abs(q1) <= kDegeneracyEps) {
        std::ostringstream msg;
        msg << "reduced system is singular at q1 = " << q1;
        throw SingularityError(msg.str());
    }
    const double p1 = pt.costate.p1, p2 = pt.costate.p2;
    return {p1, p2, p2 * p2 / q1, -p1 * p2 / q1};
}

namespace {

using Phase4 = std::array<double, 4>;

Phase4 pack(const PhasePoint& pt) {
    return {pt.state.q1, pt.state.q2, pt.costate.p1, pt.costate.p2};
}

PhasePoint unpack(const Phase4& y) {
    return {{y[0], y[1]}, {y[2], y[3]}};
}

Phase4 axpy(const Phase4& y, double a, const Phase4& d) {
    return {y[0] + a * d[0], y[1] + a * d[1], y[2] + a * d[2], y[3] + a * d[3]};
}

struct Rhs {
    RhsKind kind;
    const FrameField& frame;

    Phase4 operator()(const Phase4& y) const {
        const PhasePoint pt = unpack(y);
        return kind == RhsKind::Full ? general_rhs(frame, pt) : reduced_rhs(pt);
    }
};

Phase4 rk4_step(const Rhs& f, const Phase4& y, double h) {
    const Phase4 k1 = f(y);
    const Phase4 k2 = f(axpy(y, 0.5 * h, k1));
    const Phase4 k3 = f(axpy(y, 0.5 * h, k2));
    const Phase4 k4 = f(axpy(y, h, k3));
    Phase4 out;
    for (int i = 0; i < 4; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double kDpC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kDpA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kDpB5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                             -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kDpB4[7] = {5179.0 / 57600,  0.0,       7571.0 / 16695, 393.0 / 640,
                             -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct Dp54Result {
    Phase4 y5;
    double err;  // scaled error norm, accept when <= 1
};

Dp54Result dp54_step(const Rhs& f, const Phase4& y, double h, double rel, double abs) {
    Phase4 k[7];
    k[0] = f(y);
    for (int s = 1; s < 7; ++s) {
        Phase4 ys = y;
        for (int j = 0; j < s; ++j)
            for (int i = 0; i < 4; ++i) ys[i] += h * kDpA[s][j] * k[j][i];
        k[s] = f(ys);
    }
    Phase4 y5 = y, y4 = y;
    for (int s = 0; s < 7; ++s)
        for (int i = 0; i < 4; ++i) {
            y5[i] += h * kDpB5[s] * k[s][i];
            y4[i] += h * kDpB4[s] * k[s][i];
        }
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double scale = abs + rel * std::max(std::abs(y[i]), std::abs(y5[i]));
        err = std::max(err, std::abs(y5[i] - y4[i]) / scale);
    }
    return {y5, err};
}

}  // namespace

Trajectory integrate(RhsKind kind, const FrameField& frame, const PhasePoint& start,
                     double t0, double t1, const IntegratorConfig& cfg) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must exceed t0");
    if (!(cfg.step > 0.0)) throw std::invalid_argument("integrate: step must be positive");
    if (cfg.max_steps <= 0) throw std::invalid_argument("integrate: max_steps must be positive");
    const double horizon = t1 - t0;
    if (cfg.method == Method::RK4) {
        if (cfg.step > horizon * (1.0 + 1e-12))
            throw std::invalid_argument("integrate: step exceeds the horizon");
        if (static_cast<double>(cfg.max_steps) * cfg.step < horizon * (1.0 - 1e-12))
            throw std::invalid_argument("integrate: max_steps * step below the horizon");
    }

    Trajectory traj;
    traj.meta = {cfg, kind, frame.name, t0, t1};

    const Rhs rhs{kind, frame};
    double t = t0;
    Phase4 y = pack(start);

    const auto record = [&](double tt, const Phase4& yy) {
        const PhasePoint pt = unpack(yy);
        Control u;
        try {
            u = optimal_controls(frame, pt);
        } catch (const DegenerateFrameError& e) {
            throw IntegrationError(std::string("frame guard failed at t = ") +
                                       std::to_string(tt) + ": " + e.what(),
                                   tt);
        }
        traj.times.push_back(tt);
        traj.points.push_back(pt);
        traj.controls.push_back(u);
        traj.hamiltonian.push_back(0.5 * u.norm2());
    };

    record(t0, y);

    std::int64_t steps = 0;
    const auto guard_step = [&](auto&& do_step) {
        try {
            return do_step();
        } catch (const DegenerateFrameError& e) {
            throw IntegrationError(std::string("frame guard failed near t = ") +
                                       std::to_string(t) + ": " + e.what(),
                                   t);
        } catch (const SingularityError& e) {
            throw IntegrationError(std::string("rhs singular near t = ") +
                                       std::to_string(t) + ": " + e.what(),
                                   t);
        }
    };

    if (cfg.method == Method::RK4) {
        while (t < t1) {
            double h = cfg.step;
            bool last = false;
            if (t1 - t <= h * (1.0 + 1e-9)) {
                h = t1 - t;
                last = true;
            }
            y = guard_step([&] { return rk4_step(rhs, y, h); });
            if (++steps > cfg.max_steps)
                throw MaxStepsError("integrate: exceeded max_steps", t);
            t = last ? t1 : t0 + static_cast<double>(steps) * cfg.step;
            record(t, y);
            if (last) break;
        }
    } else {
        double h = std::min(cfg.step, horizon);
        const double h_min = horizon * 1e-14;
        while (t < t1) {
            bool last = false;
            if (t1 - t <= h) {
                h = t1 - t;
                last = true;
            }
            const Dp54Result r =
                guard_step([&] { return dp54_step(rhs, y, h, cfg.rel_tol, cfg.abs_tol); });
            if (++steps > cfg.max_steps)
                throw MaxStepsError("integrate: exceeded max_steps", t);
            if (r.err <= 1.0) {
                t = last ? t1 : t + h;
                y = r.y5;
                record(t, y);
                if (last) break;
            }
            const double factor =
                r.err > 0.0 ? 0.9 * std::pow(r.err, -0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
            if (h < h_min)
                throw IntegrationError("integrate: step size underflow", t);
        }
    }
    return traj;
}

ConservationReport conservation_report(const Trajectory& traj) {
    if (traj.empty()) throw std::invalid_argument("conservation_report: empty trajectory");
    ConservationReport rep;
    const double h0 = traj.hamiltonian.front();
    const double u0 = traj.controls.front().norm2();
    const State& s0 = traj.points.front().state;
    const double qn0 = s0.q1 * s0.q1 + s0.q2 * s0.q2;
    const bool paper = traj.meta.frame == "paper";
    double ident = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        rep.h_drift = std::max(rep.h_drift, std::abs(traj.hamiltonian[i] - h0));
        rep.unorm2_drift =
            std::max(rep.unorm2_drift, std::abs(traj.controls[i].norm2() - u0));
        const State& s = traj.points[i].state;
        const double qn = s.q1 * s.q1 + s.q2 * s.q2;
        rep.qnorm2_drift = std::max(rep.qnorm2_drift, std::abs(qn - qn0));
        if (paper) {
            const double pn = traj.points[i].costate.norm2();
            ident = std::max(ident, std::abs(traj.controls[i].norm2() - qn * pn));
        }
    }
    if (paper) rep.identity_residual = ident;
    return rep;
}

}  // namespace geosteer
