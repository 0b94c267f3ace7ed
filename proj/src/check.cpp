#include "geosteer/check.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "geosteer/closed_form.hpp"
#include "geosteer/curvature.hpp"
#include "geosteer/flow.hpp"
#include "geosteer/planner.hpp"

namespace geosteer {

CheckFault parse_check_fault(const std::string& s) {
    if (s == "none") return CheckFault::None;
    if (s == "controls") return CheckFault::Controls;
    if (s == "hamiltonian") return CheckFault::Hamiltonian;
    if (s == "curvature") return CheckFault::Curvature;
    throw std::invalid_argument("unknown fault '" + s +
                                "' (valid: none, controls, hamiltonian, curvature)");
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Grid {
    std::vector<ClosedFormParams> params;
    std::vector<double> times;
};

Grid acceptance_grid() {
    Grid g;
    for (double c1 : {0.5, 1.0, 2.0})
        for (double c2 : {0.0, 0.3})
            for (double c3 : {0.0, 1.0}) g.params.push_back({c1, c2, c3});
    g.times = {0.0, 0.25, 0.5, 0.75, 1.0};
    return g;
}

PhasePoint random_phase_point(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> radius(lo, hi);
    const double aq = angle(rng), rq = radius(rng);
    const double ap = angle(rng), rp = radius(rng);
    return {{rq * std::cos(aq), rq * std::sin(aq)}, {rp * std::cos(ap), rp * std::sin(ap)}};
}

}  // namespace

std::vector<CheckResult> run_check_suite(CheckFault fault) {
    std::vector<CheckResult> results;
    const auto add = [&](const std::string& name, double residual, double tol) {
        results.push_back({name, residual, tol, residual <= tol});
    };

    const FrameField paper = paper_frame();
    std::mt19937_64 rng(0x5eed5eedULL);

    // Control-norm identity u1^2 + u2^2 = (p1^2+p2^2)(q1^2+q2^2).
    {
        double worst = 0.0;
        for (int i = 0; i < 10'000; ++i) {
            const PhasePoint pt = random_phase_point(rng, 0.1, 10.0);
            Control u = optimal_controls(paper, pt);
            if (fault == CheckFault::Controls) u.u2 += 1e-6;
            const double qq = pt.state.q1 * pt.state.q1 + pt.state.q2 * pt.state.q2;
            const double expected = pt.costate.norm2() * qq;
            worst = std::max(worst, std::abs(u.norm2() - expected) / expected);
        }
        add("control_norm_identity", worst, 1e-12);
    }

    // Conservation along the Full flow from ((1,0),(0,1)).
    {
        const Trajectory traj =
            integrate(RhsKind::Full, paper, {{1.0, 0.0}, {0.0, 1.0}}, 0.0, 1.0, {});
        double h_drift = 0.0, u_drift = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            double h = traj.hamiltonian[i];
            if (fault == CheckFault::Hamiltonian)
                h += 1e-6 * static_cast<double>(i) / static_cast<double>(traj.size());
            h_drift = std::max(h_drift, std::abs(h - 0.5));
            Control u = traj.controls[i];
            if (fault == CheckFault::Controls) u.u2 += 1e-6;
            u_drift = std::max(u_drift, std::abs(u.norm() - 1.0));
        }
        add("hamiltonian_drift", h_drift, 1e-9);
        add("control_norm_drift", u_drift, 1e-8);
    }

    // Closed-form first integrals over the parameter grid.
    {
        const Grid grid = acceptance_grid();
        double unit_speed = 0.0, clairaut = 0.0, costate_norm = 0.0;
        for (const auto& c : grid.params) {
            for (double t : grid.times) {
                const double h = fd_step({1.0, std::abs(t)});
                const PhasePoint plus = phase_at(c, t + h);
                const PhasePoint minus = phase_at(c, t - h);
                const double qd1 = (plus.state.q1 - minus.state.q1) / (2.0 * h);
                const double qd2 = (plus.state.q2 - minus.state.q2) / (2.0 * h);
                unit_speed = std::max(unit_speed, std::abs(qd1 * qd1 + qd2 * qd2 - 1.0));

                const PhasePoint pt = phase_at(c, t);
                clairaut = std::max(
                    clairaut, std::abs(pt.state.q1 * pt.costate.p2 - c.c1) / std::abs(c.c1));
                costate_norm = std::max(costate_norm, std::abs(pt.costate.norm2() - 1.0));
            }
        }
        add("closedform_unit_speed", unit_speed, 1e-6);
        add("closedform_clairaut", clairaut, 1e-12);
        add("closedform_costate_norm", costate_norm, 1e-14);
    }

    // Reduced flow reproduces the closed form.
    {
        const Grid grid = acceptance_grid();
        double worst = 0.0;
        for (const auto& c : grid.params) {
            const Trajectory traj =
                integrate(RhsKind::Reduced, paper, phase_at(c, 0.0), 0.0, 1.0, {});
            const State want = phase_at(c, 1.0).state;
            const State& got = traj.points.back().state;
            worst = std::max(worst, std::hypot(got.q1 - want.q1, got.q2 - want.q2));
        }
        add("reduced_flow_reproduction", worst, 1e-6);
    }

    // Curvature regressions.
    {
        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        std::uniform_real_distribution<double> radius(0.1, 10.0);
        double bracket_worst = 0.0, kappa_worst = 0.0;
        for (int i = 0; i < 1'000; ++i) {
            const double a = angle(rng), r = radius(rng);
            const State q{r * std::cos(a), r * std::sin(a)};
            bracket_worst = std::max(bracket_worst, norm(lie_bracket(paper, q)));
            double kappa = gaussian_curvature(paper, q);
            if (fault == CheckFault::Curvature) kappa += 1e-3;
            kappa_worst = std::max(kappa_worst, std::abs(kappa));
        }
        add("bracket_paper", bracket_worst, 1e-7);
        add("kappa_paper", kappa_worst, 1e-6);

        const FrameField halfplane = builtin_frame("halfplane");
        std::uniform_real_distribution<double> span(0.5, 5.0);
        std::uniform_real_distribution<double> wide(-5.0, 5.0);
        double half_worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const State q{wide(rng), span(rng)};
            half_worst = std::max(half_worst, std::abs(gaussian_curvature(halfplane, q) + 1.0));
        }
        add("kappa_halfplane", half_worst, 1e-5);

        const FrameField grushin = builtin_frame("grushin");
        double gru_worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const State q{span(rng), wide(rng)};
            const double want = -2.0 / (q.q1 * q.q1);
            gru_worst = std::max(gru_worst, std::abs(gaussian_curvature(grushin, q) - want));
        }
        add("kappa_grushin", gru_worst, 1e-4);
    }

    // Geodesic curvature spot value and its identity with theta_dot.
    {
        const ClosedFormParams c{1.0, 0.0, 0.0};
        add("kappa_g_spot", std::abs(kappa_g_at(c, 0.0) + 2.0), 1e-9);
        double ident = 0.0;
        for (double t : {-0.3, -0.1, 0.0, 0.1, 0.2})
            ident = std::max(ident, std::abs(kappa_g_at(c, t) - theta_dot_at(c, t)));
        add("kappa_g_equals_theta_dot", ident, 0.0);
    }

    // Observed RK4 order via Richardson estimation.
    {
        const PhasePoint start{{1.0, 0.0}, {0.0, 1.0}};
        std::array<PhaseDeriv, 3> ends{};
        const double steps[3] = {4e-3, 2e-3, 1e-3};
        for (int k = 0; k < 3; ++k) {
            IntegratorConfig cfg;
            cfg.step = steps[k];
            const Trajectory traj = integrate(RhsKind::Full, paper, start, 0.0, 1.0, cfg);
            const PhasePoint& e = traj.points.back();
            ends[k] = {e.state.q1, e.state.q2, e.costate.p1, e.costate.p2};
        }
        double d1 = 0.0, d2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            d1 += (ends[0][i] - ends[1][i]) * (ends[0][i] - ends[1][i]);
            d2 += (ends[1][i] - ends[2][i]) * (ends[1][i] - ends[2][i]);
        }
        const double order = std::log2(std::sqrt(d1) / std::sqrt(d2));
        add("rk4_order", std::abs(order - 4.0), 0.2);
    }

    // One planner recovery case per seed region.
    {
        const State q0{1.0, 0.0};
        double worst = 0.0;
        for (double phi : {0.4, 1.7, 3.9}) {
            const Costate p_true{std::cos(phi), std::sin(phi)};
            const ShootingConfig cfg;
            const State target = shoot(paper, q0, p_true, cfg);
            const PlanResult result = plan(paper, q0, target, cfg);
            worst = std::max(worst, result.residual);
        }
        add("planner_recovery", worst, 1e-6);
    }

    return results;
}

}  // namespace geosteer
