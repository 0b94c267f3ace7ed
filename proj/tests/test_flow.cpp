#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <thread>
#include <vector>

#include "geosteer/closed_form.hpp"
#include "geosteer/errors.hpp"
#include "geosteer/flow.hpp"

using namespace geosteer;

namespace {

PhasePoint random_phase(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> radius(lo, hi);
    const double aq = angle(rng), rq = radius(rng);
    const double ap = angle(rng), rp = radius(rng);
    return {{rq * std::cos(aq), rq * std::sin(aq)}, {rp * std::cos(ap), rp * std::sin(ap)}};
}

// Unit-square test frame with a restricted guard, for aborting flows on demand.
FrameField strip_frame(double q1_min) {
    FrameField f;
    f.name = "strip";
    f.f1 = [](const State&) { return Vec2{1.0, 0.0}; };
    f.f2 = [](const State&) { return Vec2{0.0, 1.0}; };
    f.jac1 = [](const State&) { return Mat2{}; };
    f.jac2 = [](const State&) { return Mat2{}; };
    f.domain_guard = [q1_min](const State& q) { return q.q1 > q1_min; };
    return f;
}

}  // namespace

TEST_CASE("optimal controls of the paper frame") {
    const FrameField paper = paper_frame();
    // u1 = p1 q1 + p2 q2, u2 = p1 q2 - p2 q1.
    Control u = optimal_controls(paper, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK(u.u1 == 0.0);
    CHECK(u.u2 == -1.0);
    u = optimal_controls(paper, {{1.0, 1.0}, {1.0, 0.0}});
    CHECK(u.u1 == 1.0);
    CHECK(u.u2 == 1.0);
    u = optimal_controls(paper, {{1.0, 0.0}, {0.0, 0.0}});
    CHECK(u.u1 == 0.0);
    CHECK(u.u2 == 0.0);

    CHECK_THROWS_AS(optimal_controls(paper, {{0.0, 0.0}, {1.0, 0.0}}), DegenerateFrameError);
}

TEST_CASE("maximized Hamiltonian") {
    const FrameField paper = paper_frame();
    CHECK(hamiltonian(paper, {{1.0, 0.0}, {0.0, 1.0}}) == 0.5);
    CHECK(hamiltonian(paper, {{1.0, 1.0}, {1.0, 0.0}}) == 1.0);
    CHECK(hamiltonian(paper, {{0.7, -0.3}, {0.0, 0.0}}) == 0.0);
}

TEST_CASE("hamilton_rhs spot values") {
    auto d = hamilton_rhs({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 1.0);
    CHECK(d[2] == 1.0);
    CHECK(d[3] == 0.0);

    d = hamilton_rhs({{1.0, 1.0}, {1.0, 0.0}});
    CHECK(d[0] == 2.0);
    CHECK(d[1] == 0.0);
    CHECK(d[2] == -1.0);
    CHECK(d[3] == 1.0);

    d = hamilton_rhs({{1.0, 0.0}, {0.0, 0.0}});
    for (double v : d) CHECK(v == 0.0);
}

TEST_CASE("general_rhs matches hamilton_rhs on the paper frame") {
    const FrameField paper = paper_frame();
    const auto a = general_rhs(paper, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK(a[0] == 0.0);
    CHECK(a[1] == 1.0);
    CHECK(a[2] == 1.0);
    CHECK(a[3] == 0.0);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 10'000; ++i) {
        const PhasePoint pt = random_phase(rng, 0.1, 1.2);
        const auto g = general_rhs(paper, pt);
        const auto h = hamilton_rhs(pt);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(g[k] - h[k]) <= 1e-14);
    }
}

TEST_CASE("general_rhs composes the frame Jacobians") {
    // halfplane at q=(0,1), p=(1,0): u = (1, 0), J1 p = (0, 0), so pdot = 0.
    const FrameField half = builtin_frame("halfplane");
    auto d = general_rhs(half, {{0.0, 1.0}, {1.0, 0.0}});
    CHECK(d[0] == 1.0);
    CHECK(d[1] == 0.0);
    CHECK(d[2] == 0.0);
    CHECK(d[3] == 0.0);

    // grushin at q=(2,1), p=(0.3,0.5): u=(0.3,1), J2 p=(0,0.3),
    // qdot = 0.3 f1 + 1.0 f2 = (0.3, 2), pdot = -(0, 0.3).
    const FrameField gru = builtin_frame("grushin");
    d = general_rhs(gru, {{2.0, 1.0}, {0.3, 0.5}});
    CHECK(d[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d[2] == 0.0);
    CHECK(d[3] == doctest::Approx(-0.3).epsilon(1e-15));

    // zero costate annihilates every term, for any frame
    for (const char* name : {"paper", "halfplane", "grushin"}) {
        const auto z = general_rhs(builtin_frame(name), {{1.0, 1.0}, {0.0, 0.0}});
        for (double v : z) CHECK(v == 0.0);
    }
}

TEST_CASE("reduced_rhs spot values and singularity") {
    auto d = reduced_rhs({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 1.0);
    CHECK(d[2] == 1.0);
    CHECK(d[3] == 0.0);

    d = reduced_rhs({{1.0, 0.0}, {0.0, 0.0}});
    for (double v : d) CHECK(v == 0.0);

    // hand evaluation: q1=2, p=(0.6,0.8): pdot = (0.64/2, -0.48/2)
    d = reduced_rhs({{2.0, 1.0}, {0.6, 0.8}});
    CHECK(d[0] == 0.6);
    CHECK(d[1] == 0.8);
    CHECK(d[2] == doctest::Approx(0.32).epsilon(1e-15));
    CHECK(d[3] == doctest::Approx(-0.24).epsilon(1e-15));

    CHECK_THROWS_AS(reduced_rhs({{0.0, 1.0}, {1.0, 0.0}}), SingularityError);
}

TEST_CASE("reduced_rhs is the system the analytic extremals solve") {
    // Analytic derivative of phase_at: qdot = p, p1dot = c1^2/r^3,
    // p2dot = -c1 s / r^3 with s = t + c2, r = hypot(s, c1).
    for (const double c1 : {0.5, 1.0, 2.0, -1.0}) {
        for (const double c2 : {0.0, 0.3}) {
            for (const double c3 : {0.0, 1.0}) {
                const ClosedFormParams params{c1, c2, c3};
                for (double t = 0.0; t <= 1.0; t += 0.2) {
                    const PhasePoint pt = phase_at(params, t);
                    const auto d = reduced_rhs(pt);
                    const double s = t + c2;
                    const double r = std::hypot(s, c1);
                    CHECK(d[0] == doctest::Approx(pt.costate.p1).epsilon(1e-14));
                    CHECK(d[1] == doctest::Approx(pt.costate.p2).epsilon(1e-14));
                    CHECK(d[2] == doctest::Approx(c1 * c1 / (r * r * r)).epsilon(1e-12));
                    CHECK(d[3] == doctest::Approx(-c1 * s / (r * r * r)).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("integration conserves the Hamiltonian on the Full paper flow") {
    const FrameField paper = paper_frame();
    for (const double step : {1e-3, 5e-4}) {
        IntegratorConfig cfg;
        cfg.step = step;
        const Trajectory traj =
            integrate(RhsKind::Full, paper, {{1.0, 0.0}, {0.0, 1.0}}, 0.0, 1.0, cfg);
        for (double h : traj.hamiltonian) CHECK(std::abs(h - 0.5) <= 1e-9);
        for (const Control& u : traj.controls) CHECK(std::abs(u.norm() - 1.0) <= 1e-8);
    }
}

TEST_CASE("trajectory sampling invariants") {
    const FrameField paper = paper_frame();
    IntegratorConfig cfg;
    cfg.step = 1e-2;
    const Trajectory traj =
        integrate(RhsKind::Full, paper, {{1.0, 0.3}, {0.2, 0.9}}, 0.25, 1.75, cfg);
    CHECK(traj.times.front() == 0.25);
    CHECK(traj.times.back() == 1.75);
    for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
    // stored controls and H are recomputed from the frame at each sample
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const Control u = optimal_controls(paper, traj.points[i]);
        CHECK(traj.controls[i].u1 == u.u1);
        CHECK(traj.controls[i].u2 == u.u2);
        CHECK(traj.hamiltonian[i] == 0.5 * u.norm2());
    }
}

TEST_CASE("equilibrium start stays put") {
    const FrameField paper = paper_frame();
    const Trajectory traj = integrate(RhsKind::Full, paper, {{2.0, -1.0}, {0.0, 0.0}}, 0.0, 1.0, {});
    for (const PhasePoint& pt : traj.points) {
        CHECK(pt.state.q1 == 2.0);
        CHECK(pt.state.q2 == -1.0);
        CHECK(pt.costate.p1 == 0.0);
        CHECK(pt.costate.p2 == 0.0);
    }
}

TEST_CASE("integration precondition and budget errors") {
    const FrameField paper = paper_frame();
    const PhasePoint start{{1.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(integrate(RhsKind::Full, paper, start, 1.0, 1.0, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(RhsKind::Full, paper, start, 1.0, 0.5, {}),
                    std::invalid_argument);

    IntegratorConfig big;
    big.step = 0.5;
    CHECK_THROWS_AS(integrate(RhsKind::Full, paper, start, 0.0, 0.1, big),
                    std::invalid_argument);

    IntegratorConfig short_budget;
    short_budget.step = 1e-3;
    short_budget.max_steps = 10;
    CHECK_THROWS_AS(integrate(RhsKind::Full, paper, start, 0.0, 1.0, short_budget),
                    std::invalid_argument);

    IntegratorConfig starved;
    starved.method = Method::RK45;
    starved.max_steps = 3;
    starved.rel_tol = 1e-13;
    starved.abs_tol = 1e-14;
    CHECK_THROWS_AS(integrate(RhsKind::Full, paper, start, 0.0, 1.0, starved), MaxStepsError);
}

TEST_CASE("guard violation mid-flow reports the failing time") {
    // constant frame with guard q1 > 0.5; qdot = p = (-1, 0) crosses at t = 0.5
    const FrameField strip = strip_frame(0.5);
    try {
        integrate(RhsKind::Full, strip, {{1.0, 0.0}, {-1.0, 0.0}}, 0.0, 1.0, {});
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.t_fail == doctest::Approx(0.5).epsilon(0.02));
    }
}

TEST_CASE("rk45 matches rk4 and lands exactly on t1") {
    const FrameField paper = paper_frame();
    const PhasePoint start{{1.0, 0.0}, {0.0, 1.0}};
    IntegratorConfig adaptive;
    adaptive.method = Method::RK45;
    const Trajectory a = integrate(RhsKind::Full, paper, start, 0.0, 1.0, adaptive);
    const Trajectory b = integrate(RhsKind::Full, paper, start, 0.0, 1.0, {});
    CHECK(a.times.back() == 1.0);
    CHECK(a.points.back().state.q1 ==
          doctest::Approx(b.points.back().state.q1).epsilon(1e-8));
    CHECK(a.points.back().state.q2 ==
          doctest::Approx(b.points.back().state.q2).epsilon(1e-8));
    for (double h : a.hamiltonian) CHECK(std::abs(h - 0.5) <= 1e-8);
}

TEST_CASE("fixed-step integration is bitwise deterministic") {
    const FrameField paper = paper_frame();
    const PhasePoint start{{1.1, -0.4}, {0.3, 0.8}};
    const Trajectory a = integrate(RhsKind::Full, paper, start, 0.0, 1.0, {});
    const Trajectory b = integrate(RhsKind::Full, paper, start, 0.0, 1.0, {});
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.times.data(), b.times.data(), a.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.points.data(), b.points.data(), a.size() * sizeof(PhasePoint)) == 0);
}

TEST_CASE("conservation report") {
    const FrameField paper = paper_frame();

    // equilibrium: every drift is zero
    const Trajectory still = integrate(RhsKind::Full, paper, {{1.0, 2.0}, {0.0, 0.0}}, 0.0, 1.0, {});
    const ConservationReport quiet = conservation_report(still);
    CHECK(quiet.h_drift == 0.0);
    CHECK(quiet.unorm2_drift == 0.0);
    CHECK(quiet.qnorm2_drift == 0.0);
    REQUIRE(quiet.identity_residual.has_value());
    CHECK(*quiet.identity_residual == 0.0);

    // paper-frame identity residual along a generic flow
    const Trajectory traj =
        integrate(RhsKind::Full, paper, {{0.8, 0.5}, {0.6, -0.7}}, 0.0, 1.0, {});
    const ConservationReport rep = conservation_report(traj);
    REQUIRE(rep.identity_residual.has_value());
    CHECK(*rep.identity_residual <= 1e-12);

    // order-4 convergence: halving the step divides the H drift by ~16
    IntegratorConfig coarse, fine;
    coarse.step = 2e-2;
    fine.step = 1e-2;
    const PhasePoint start{{1.0, 0.0}, {0.4, 1.1}};
    const double drift_coarse =
        conservation_report(integrate(RhsKind::Full, paper, start, 0.0, 1.0, coarse)).h_drift;
    const double drift_fine =
        conservation_report(integrate(RhsKind::Full, paper, start, 0.0, 1.0, fine)).h_drift;
    const double ratio = drift_coarse / drift_fine;
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);

    CHECK_THROWS_AS(conservation_report(Trajectory{}), std::invalid_argument);
}

TEST_CASE("a batch of integrations can run concurrently") {
    const FrameField paper = paper_frame();
    std::vector<PhasePoint> starts;
    std::mt19937_64 rng(61);
    for (int i = 0; i < 8; ++i) starts.push_back(random_phase(rng, 0.5, 2.0));

    std::vector<Trajectory> serial;
    for (const PhasePoint& s : starts)
        serial.push_back(integrate(RhsKind::Full, paper, s, 0.0, 1.0, {}));

    std::vector<Trajectory> parallel(starts.size());
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < starts.size(); ++i)
        workers.emplace_back([&, i] {
            parallel[i] = integrate(RhsKind::Full, paper, starts[i], 0.0, 1.0, {});
        });
    for (std::thread& w : workers) w.join();

    for (std::size_t i = 0; i < starts.size(); ++i) {
        REQUIRE(parallel[i].size() == serial[i].size());
        CHECK(std::memcmp(parallel[i].points.data(), serial[i].points.data(),
                          serial[i].size() * sizeof(PhasePoint)) == 0);
    }
}

TEST_CASE("control-norm identity holds at random phase points") {
    const FrameField paper = paper_frame();
    std::mt19937_64 rng(43);
    for (int i = 0; i < 1000; ++i) {
        const PhasePoint pt = random_phase(rng, 0.1, 10.0);
        const Control u = optimal_controls(paper, pt);
        const double qq = pt.state.q1 * pt.state.q1 + pt.state.q2 * pt.state.q2;
        const double expected = pt.costate.norm2() * qq;
        CHECK(std::abs(u.norm2() - expected) <= 1e-12 * expected);
    }
}
