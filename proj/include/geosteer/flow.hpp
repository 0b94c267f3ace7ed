#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geosteer/frame.hpp"

namespace geosteer {

/// Which right-hand side drives the trajectory.
///
/// Full is the four-equation Hamiltonian system of the paper frame
/// (and its general-frame form composed from frame Jacobians); Reduced
/// is the first-order system the analytic extremals solve, with
/// qdot = p and the Clairaut integral q1*p2 eliminated.
enum class RhsKind { Full, Reduced };

enum class Method { RK4, RK45 };

struct IntegratorConfig {
    double step = 1e-3;       ///< fixed step (RK4) / initial step (RK45)
    Method method = Method::RK4;
    double rel_tol = 1e-9;    ///< adaptive only
    double abs_tol = 1e-12;   ///< adaptive only
    std::int64_t max_steps = 10'000'000;
};

/// (q1dot, q2dot, p1dot, p2dot).
using PhaseDeriv = std::array<double, 4>;

struct TrajectoryMeta {
    IntegratorConfig config;
    RhsKind kind = RhsKind::Full;
    std::string frame;
    double t0 = 0.0;
    double t1 = 0.0;
};

/// Sampled solution: times are strictly increasing with times.front() == t0
/// and times.back() == t1; controls and hamiltonian are recomputed from the
/// frame at each sample, never integrated independently.
struct Trajectory {
    std::vector<double> times;
    std::vector<PhasePoint> points;
    std::vector<Control> controls;
    std::vector<double> hamiltonian;
    TrajectoryMeta meta;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
};

/// Hamiltonian-minimizing control law u_i = <p, f_i(q)>.
Control optimal_controls(const FrameField& frame, const PhasePoint& pt);

/// Maximized Hamiltonian H = (u1^2 + u2^2)/2 evaluated at the optimal
/// controls; equals (p1^2+p2^2)(q1^2+q2^2)/2 for the paper frame.
double hamiltonian(const FrameField& frame, const PhasePoint& pt);

/// The paper frame's four Hamilton equations:
///   q1dot = p1 (q1^2+q2^2)
///   q2dot = p2 (q1^2+q2^2)
///   p1dot = -q1 (p1^2-p2^2) - 2 p1 p2 q2
///   p2dot = -q2 (p2^2-p1^2) - 2 p1 p2 q1
PhaseDeriv hamilton_rhs(const PhasePoint& pt);

/// General-frame form of the same flow, composed from frame Jacobians:
/// qdot = u1 f1 + u2 f2, pdot = -u1 (J1 p) - u2 (J2 p).
/// Coincides with hamilton_rhs on the paper frame.
PhaseDeriv general_rhs(const FrameField& frame, const PhasePoint& pt);

/// First-order system solved by the closed-form extremals:
///   qdot = p,  p1dot = p2^2 / q1,  p2dot = -p1 p2 / q1.
/// Singular on the q1 = 0 line.
PhaseDeriv reduced_rhs(const PhasePoint& pt);

/// Integrates the chosen system over [t0, t1]. Fixed-step RK4 lands the
/// final sample exactly on t1 by shortening the last step; RK45 samples at
/// accepted steps. Controls and H are recomputed per sample. Throws
/// IntegrationError (with the failing time) if the frame guard fails
/// mid-flow, MaxStepsError when the step budget runs out, and
/// std::invalid_argument for bad spans or configs.
Trajectory integrate(RhsKind kind, const FrameField& frame, const PhasePoint& start,
                     double t0, double t1, const IntegratorConfig& cfg = {});

/// Drift diagnostics over a trajectory. identity_residual is the paper-frame
/// identity |u|^2 - (p1^2+p2^2)(q1^2+q2^2) and is absent for other frames;
/// qnorm2_drift surfaces that the Full flow does not preserve q1^2+q2^2.
struct ConservationReport {
    double h_drift = 0.0;        ///< max |H(t) - H(t0)|
    double unorm2_drift = 0.0;   ///< max | |u(t)|^2 - |u(t0)|^2 |
    double qnorm2_drift = 0.0;   ///< max | |q(t)|^2 - |q(t0)|^2 |
    std::optional<double> identity_residual;
};

ConservationReport conservation_report(const Trajectory& traj);

}  // namespace geosteer
