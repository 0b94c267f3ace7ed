#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geosteer/check.hpp"
#include "geosteer/closed_form.hpp"
#include "geosteer/curvature.hpp"
#include "geosteer/errors.hpp"
#include "geosteer/flow.hpp"
#include "geosteer/planner.hpp"

namespace py = pybind11;
using namespace geosteer;

namespace {

std::string repr_pair(const char* name, double a, double b) {
    return std::string(name) + "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Geometric optimal-control toolkit: extremal flows, analytic extremals, "
              "frame curvature and shooting-method steering on the plane";

    // Translators run newest-first: register bases before derived classes.
    py::register_exception<UnknownFrameError>(m, "UnknownFrameError", PyExc_ValueError);
    py::register_exception<DegenerateFrameError>(m, "DegenerateFrameError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
    py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);
    py::register_exception<MaxStepsError>(m, "MaxStepsError", PyExc_RuntimeError);

    py::class_<State>(m, "State")
        .def(py::init<double, double>(), py::arg("q1") = 0.0, py::arg("q2") = 0.0)
        .def_readwrite("q1", &State::q1)
        .def_readwrite("q2", &State::q2)
        .def("__repr__", [](const State& s) { return repr_pair("State", s.q1, s.q2); });

    py::class_<Costate>(m, "Costate")
        .def(py::init<double, double>(), py::arg("p1") = 0.0, py::arg("p2") = 0.0)
        .def_readwrite("p1", &Costate::p1)
        .def_readwrite("p2", &Costate::p2)
        .def("__repr__", [](const Costate& c) { return repr_pair("Costate", c.p1, c.p2); });

    py::class_<PhasePoint>(m, "PhasePoint")
        .def(py::init<State, Costate>(), py::arg("state"), py::arg("costate"))
        .def_readwrite("state", &PhasePoint::state)
        .def_readwrite("costate", &PhasePoint::costate);

    py::class_<Control>(m, "Control")
        .def(py::init<double, double>(), py::arg("u1") = 0.0, py::arg("u2") = 0.0)
        .def_readwrite("u1", &Control::u1)
        .def_readwrite("u2", &Control::u2)
        .def("norm", &Control::norm)
        .def("norm2", &Control::norm2)
        .def("__repr__", [](const Control& u) { return repr_pair("Control", u.u1, u.u2); });

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) { return repr_pair("Vec2", v.x, v.y); });

    py::class_<Mat2>(m, "Mat2")
        .def(py::init<double, double, double, double>(), py::arg("a11") = 0.0,
             py::arg("a12") = 0.0, py::arg("a21") = 0.0, py::arg("a22") = 0.0)
        .def_readwrite("a11", &Mat2::a11)
        .def_readwrite("a12", &Mat2::a12)
        .def_readwrite("a21", &Mat2::a21)
        .def_readwrite("a22", &Mat2::a22);

    py::class_<FrameField>(m, "FrameField")
        .def(py::init([](std::string name, std::function<Vec2(const State&)> f1,
                         std::function<Vec2(const State&)> f2,
                         std::function<Mat2(const State&)> jac1,
                         std::function<Mat2(const State&)> jac2,
                         std::function<bool(const State&)> domain_guard) {
                 FrameField f;
                 f.name = std::move(name);
                 f.f1 = std::move(f1);
                 f.f2 = std::move(f2);
                 f.jac1 = jac1 ? std::move(jac1) : finite_difference_jacobian(f.f1);
                 f.jac2 = jac2 ? std::move(jac2) : finite_difference_jacobian(f.f2);
                 f.domain_guard =
                     domain_guard ? std::move(domain_guard) : [](const State&) { return true; };
                 return f;
             }),
             py::arg("name"), py::arg("f1"), py::arg("f2"), py::arg("jac1") = nullptr,
             py::arg("jac2") = nullptr, py::arg("domain_guard") = nullptr,
             "Custom frame from evaluators; Jacobians default to central differences")
        .def_readonly("name", &FrameField::name)
        .def("f1", [](const FrameField& f, const State& q) { return f.f1(q); })
        .def("f2", [](const FrameField& f, const State& q) { return f.f2(q); })
        .def("jac1", [](const FrameField& f, const State& q) { return f.jac1(q); })
        .def("jac2", [](const FrameField& f, const State& q) { return f.jac2(q); })
        .def("gram_det", &FrameField::gram_det)
        .def("degenerate_at", &FrameField::degenerate_at);

    py::enum_<RhsKind>(m, "RhsKind")
        .value("FULL", RhsKind::Full)
        .value("REDUCED", RhsKind::Reduced);

    py::enum_<Method>(m, "Method").value("RK4", Method::RK4).value("RK45", Method::RK45);

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("step", &IntegratorConfig::step)
        .def_readwrite("method", &IntegratorConfig::method)
        .def_readwrite("rel_tol", &IntegratorConfig::rel_tol)
        .def_readwrite("abs_tol", &IntegratorConfig::abs_tol)
        .def_readwrite("max_steps", &IntegratorConfig::max_steps);

    py::class_<TrajectoryMeta>(m, "TrajectoryMeta")
        .def_readonly("config", &TrajectoryMeta::config)
        .def_readonly("kind", &TrajectoryMeta::kind)
        .def_readonly("frame", &TrajectoryMeta::frame)
        .def_readonly("t0", &TrajectoryMeta::t0)
        .def_readonly("t1", &TrajectoryMeta::t1);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("points", &Trajectory::points)
        .def_readonly("controls", &Trajectory::controls)
        .def_readonly("hamiltonian", &Trajectory::hamiltonian)
        .def_readonly("meta", &Trajectory::meta)
        .def("__len__", &Trajectory::size);

    py::class_<ConservationReport>(m, "ConservationReport")
        .def_readonly("h_drift", &ConservationReport::h_drift)
        .def_readonly("unorm2_drift", &ConservationReport::unorm2_drift)
        .def_readonly("qnorm2_drift", &ConservationReport::qnorm2_drift)
        .def_readonly("identity_residual", &ConservationReport::identity_residual);

    py::class_<ClosedFormParams>(m, "ClosedFormParams")
        .def(py::init<double, double, double>(), py::arg("c1") = 1.0, py::arg("c2") = 0.0,
             py::arg("c3") = 0.0)
        .def_readwrite("c1", &ClosedFormParams::c1)
        .def_readwrite("c2", &ClosedFormParams::c2)
        .def_readwrite("c3", &ClosedFormParams::c3);

    py::class_<StructureData>(m, "StructureData")
        .def_readonly("bracket", &StructureData::bracket)
        .def_readonly("c1", &StructureData::c1)
        .def_readonly("c2", &StructureData::c2)
        .def_readonly("gram_det", &StructureData::gram_det);

    py::class_<ShootingConfig>(m, "ShootingConfig")
        .def(py::init<>())
        .def_readwrite("tol", &ShootingConfig::tol)
        .def_readwrite("max_iters", &ShootingConfig::max_iters)
        .def_readwrite("fd_step", &ShootingConfig::fd_step)
        .def_readwrite("multistart", &ShootingConfig::multistart)
        .def_readwrite("integrator", &ShootingConfig::integrator)
        .def_readwrite("horizon", &ShootingConfig::horizon)
        .def_readwrite("rhs_kind", &ShootingConfig::rhs_kind);

    py::class_<PlanResult>(m, "PlanResult")
        .def_readonly("p0", &PlanResult::p0)
        .def_readonly("trajectory", &PlanResult::trajectory)
        .def_readonly("residual", &PlanResult::residual)
        .def_readonly("iterations", &PlanResult::iterations)
        .def_readonly("converged", &PlanResult::converged)
        .def_readonly("seed_index", &PlanResult::seed_index);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("max_residual", &CheckResult::max_residual)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_readonly("ok", &CheckResult::pass);

    m.def("paper_frame", &paper_frame);
    m.def("builtin_frame", &builtin_frame, py::arg("name"));
    m.def("builtin_frame_names", &builtin_frame_names);
    m.def(
        "frame_inner", [](const Costate& p, const Vec2& v) { return frame_inner(p, v); },
        py::arg("p"), py::arg("v"));

    m.def("optimal_controls", &optimal_controls, py::arg("frame"), py::arg("pt"));
    m.def("hamiltonian", &hamiltonian, py::arg("frame"), py::arg("pt"));
    m.def("hamilton_rhs", &hamilton_rhs, py::arg("pt"));
    m.def("general_rhs", &general_rhs, py::arg("frame"), py::arg("pt"));
    m.def("reduced_rhs", &reduced_rhs, py::arg("pt"));
    m.def("integrate", &integrate, py::arg("kind"), py::arg("frame"), py::arg("start"),
          py::arg("t0"), py::arg("t1"), py::arg("config") = IntegratorConfig{});
    m.def("conservation_report", &conservation_report, py::arg("trajectory"));

    m.def("phase_at", &phase_at, py::arg("params"), py::arg("t"));
    m.def("controls_at", &controls_at, py::arg("params"), py::arg("t"));
    m.def("control_rate_u1", &control_rate_u1, py::arg("params"), py::arg("t"));
    m.def("theta_at", &theta_at, py::arg("params"), py::arg("t"));
    m.def("theta_dot_at", &theta_dot_at, py::arg("params"), py::arg("t"));
    m.def("kappa_g_at", &kappa_g_at, py::arg("params"), py::arg("t"));

    m.def("lie_bracket", &lie_bracket, py::arg("frame"), py::arg("q"));
    m.def("structure_functions", &structure_functions, py::arg("frame"), py::arg("q"));
    m.def("gaussian_curvature", &gaussian_curvature, py::arg("frame"), py::arg("q"));
    m.def("geodesic_curvature", &geodesic_curvature, py::arg("theta_dot"), py::arg("theta"),
          py::arg("c1"), py::arg("c2"));

    m.def("residual", &residual, py::arg("q_end"), py::arg("q_goal"));
    m.def("shoot", &shoot, py::arg("frame"), py::arg("q0"), py::arg("p0"),
          py::arg("config") = ShootingConfig{});
    m.def("plan", &plan, py::arg("frame"), py::arg("q0"), py::arg("q_goal"),
          py::arg("config") = ShootingConfig{});

    py::enum_<CheckFault>(m, "CheckFault")
        .value("NONE", CheckFault::None)
        .value("CONTROLS", CheckFault::Controls)
        .value("HAMILTONIAN", CheckFault::Hamiltonian)
        .value("CURVATURE", CheckFault::Curvature);
    m.def("run_check_suite", &run_check_suite, py::arg("fault") = CheckFault::None);
}
