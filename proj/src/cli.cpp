#include "geosteer/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "geosteer/check.hpp"
#include "geosteer/closed_form.hpp"
#include "geosteer/curvature.hpp"
#include "geosteer/errors.hpp"
#include "geosteer/io.hpp"
#include "geosteer/planner.hpp"

namespace geosteer {

namespace {

std::pair<double, double> parse_pair(const std::string& s, const std::string& flag) {
    const auto fail = [&]() {
        return CLI::ValidationError(flag, "expected two comma-separated numbers, got '" + s + "'");
    };
    const auto comma = s.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == s.size()) throw fail();
    try {
        std::size_t a = 0, b = 0;
        const std::string first = s.substr(0, comma), second = s.substr(comma + 1);
        const double x = std::stod(first, &a);
        const double y = std::stod(second, &b);
        if (a != first.size() || b != second.size()) throw fail();
        return {x, y};
    } catch (const std::logic_error&) {
        throw fail();
    }
}

/// lo:hi:count axis description for grid sweeps.
struct Axis {
    double lo = 0.0, hi = 0.0;
    int count = 1;

    std::vector<double> values() const {
        std::vector<double> out;
        if (count == 1) {
            out.push_back(lo);
            return out;
        }
        for (int i = 0; i < count; ++i)
            out.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
        return out;
    }
};

Axis parse_axis(const std::string& s, const std::string& flag) {
    Axis axis;
    std::stringstream ss(s);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    try {
        if (parts.size() == 1) {
            axis.lo = axis.hi = std::stod(parts[0]);
            axis.count = 1;
            return axis;
        }
        if (parts.size() == 3) {
            axis.lo = std::stod(parts[0]);
            axis.hi = std::stod(parts[1]);
            axis.count = std::stoi(parts[2]);
            if (axis.count < 1) throw std::invalid_argument("count");
            return axis;
        }
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError(flag, "expected 'value' or 'lo:hi:count', got '" + s + "'");
}

/// Writes to the chosen path, or stdout for "-".
class Output {
  public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_.open(path);
        if (!file_) throw Error("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

struct CommonOpts {
    std::string frame = "paper";
    std::string format = "csv";
    std::string output = "-";
};

void add_format_output(CLI::App* cmd, CommonOpts& opts, const std::string& default_format) {
    opts.format = default_format;
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", opts.output, "Output path ('-' for stdout)")
        ->capture_default_str();
}

struct IntegrateOpts {
    CommonOpts common;
    std::string q0, p0;
    double t0 = 0.0, t1 = 1.0;
    IntegratorConfig cfg;
    std::string method = "rk4";
    std::string rhs = "full";
};

struct ClosedFormOpts {
    CommonOpts common;
    ClosedFormParams params;
    double t = 0.0;
    bool t_given = false;
    double t0 = 0.0, t1 = 1.0;
    int samples = 101;
};

struct CurvatureOpts {
    CommonOpts common;
    std::string q;
    std::string q1_axis, q2_axis;
};

struct PlanOpts {
    CommonOpts common;
    std::string q0, goal;
    ShootingConfig cfg;
    std::string method = "rk4";
    std::string rhs = "full";
};

struct CheckOpts {
    std::string mutate = "none";
};

int cmd_integrate(const IntegrateOpts& opts) {
    const FrameField frame = builtin_frame(opts.common.frame);
    const auto [q1, q2] = parse_pair(opts.q0, "--q0");
    const auto [p1, p2] = parse_pair(opts.p0, "--p0");
    IntegratorConfig cfg = opts.cfg;
    cfg.method = parse_method(opts.method);
    const RhsKind kind = parse_rhs_kind(opts.rhs);

    const Trajectory traj = integrate(kind, frame, {{q1, q2}, {p1, p2}}, opts.t0, opts.t1, cfg);

    Output out(opts.common.output);
    if (opts.common.format == "csv") {
        write_trajectory_csv(out.stream(), traj, {"geosteer integrate"});
    } else {
        out.stream() << trajectory_to_json(traj).dump(2) << "\n";
    }
    return 0;
}

int cmd_closedform(const ClosedFormOpts& opts) {
    std::vector<double> times;
    if (opts.t_given) {
        times.push_back(opts.t);
    } else {
        if (opts.samples < 1)
            throw CLI::ValidationError("--samples", "must be >= 1");
        Axis axis{opts.t0, opts.t1, opts.samples};
        times = axis.values();
    }

    const char* header =
        "t,q1,q2,p1,p2,u1,u2,unorm2,qnorm2,theta,theta_dot,kappa_g";
    std::vector<std::array<double, 12>> rows;
    for (double t : times) {
        const PhasePoint pt = phase_at(opts.params, t);
        const Control u = controls_at(opts.params, t);
        // theta leaves its domain where |u1| > 1; report nan there.
        double theta = std::nan(""), theta_dot = std::nan(""), kappa_g = std::nan("");
        try {
            theta = theta_at(opts.params, t);
            theta_dot = theta_dot_at(opts.params, t);
            kappa_g = kappa_g_at(opts.params, t);
        } catch (const DomainError&) {
        } catch (const SingularityError&) {
        }
        rows.push_back({t, pt.state.q1, pt.state.q2, pt.costate.p1, pt.costate.p2, u.u1, u.u2,
                        u.norm2(), pt.state.q1 * pt.state.q1 + pt.state.q2 * pt.state.q2, theta,
                        theta_dot, kappa_g});
    }

    std::ostringstream meta;
    meta << "c1=" << fmt17(opts.params.c1) << " c2=" << fmt17(opts.params.c2)
         << " c3=" << fmt17(opts.params.c3);

    Output out(opts.common.output);
    if (opts.common.format == "csv") {
        out.stream() << "# geosteer closedform\n# " << meta.str() << "\n" << header << "\n";
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < row.size(); ++k)
                out.stream() << (k ? "," : "") << fmt17(row[k]);
            out.stream() << "\n";
        }
    } else {
        nlohmann::json samples = nlohmann::json::array();
        const char* keys[12] = {"t",  "q1", "q2", "p1",     "p2",        "u1",
                                "u2", "unorm2", "qnorm2", "theta", "theta_dot", "kappa_g"};
        for (const auto& row : rows) {
            nlohmann::json s;
            for (int k = 0; k < 12; ++k)
                s[keys[k]] = std::isnan(row[k]) ? nlohmann::json(nullptr) : nlohmann::json(row[k]);
            samples.push_back(s);
        }
        const nlohmann::json j = {{"meta",
                                   {{"c1", opts.params.c1},
                                    {"c2", opts.params.c2},
                                    {"c3", opts.params.c3}}},
                                  {"samples", samples}};
        out.stream() << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_curvature(const CurvatureOpts& opts) {
    const FrameField frame = builtin_frame(opts.common.frame);

    std::vector<State> points;
    if (!opts.q.empty()) {
        const auto [q1, q2] = parse_pair(opts.q, "--q");
        points.push_back({q1, q2});
    } else if (!opts.q1_axis.empty() && !opts.q2_axis.empty()) {
        const Axis a1 = parse_axis(opts.q1_axis, "--q1");
        const Axis a2 = parse_axis(opts.q2_axis, "--q2");
        for (double x : a1.values())
            for (double y : a2.values()) points.push_back({x, y});
    } else {
        throw CLI::ValidationError("curvature",
                                   "give --q for a point or both --q1 and --q2 for a grid");
    }

    nlohmann::json items = nlohmann::json::array();
    CsvTable table;
    table.comments = {"geosteer curvature", "frame=" + frame.name};
    table.header = "q1,q2,c1,c2,b1,b2,kappa,gram_det";
    for (const State& q : points) {
        const StructureData sd = structure_functions(frame, q);
        const double kappa = gaussian_curvature(frame, q);
        items.push_back({{"frame", frame.name},
                         {"q1", q.q1},
                         {"q2", q.q2},
                         {"c1", sd.c1},
                         {"c2", sd.c2},
                         {"bracket", {sd.bracket.x, sd.bracket.y}},
                         {"kappa", kappa},
                         {"gram_det", sd.gram_det}});
        table.rows.push_back(
            {q.q1, q.q2, sd.c1, sd.c2, sd.bracket.x, sd.bracket.y, kappa, sd.gram_det});
    }

    Output out(opts.common.output);
    if (opts.common.format == "json") {
        out.stream() << (items.size() == 1 ? items.front() : items).dump(2) << "\n";
    } else {
        write_csv(out.stream(), table);
    }
    return 0;
}

int cmd_plan(const PlanOpts& opts) {
    const FrameField frame = builtin_frame(opts.common.frame);
    const auto [q1, q2] = parse_pair(opts.q0, "--q0");
    const auto [g1, g2] = parse_pair(opts.goal, "--goal");
    ShootingConfig cfg = opts.cfg;
    cfg.integrator.method = parse_method(opts.method);
    cfg.rhs_kind = parse_rhs_kind(opts.rhs);

    const PlanResult result = plan(frame, {q1, q2}, {g1, g2}, cfg);
    const ConservationReport report = conservation_report(result.trajectory);

    Output out(opts.common.output);
    if (opts.common.format == "json") {
        nlohmann::json j = plan_result_to_json(result);
        j["conservation"] = conservation_to_json(report);
        j["config"] = {{"tol", cfg.tol},
                       {"max_iters", cfg.max_iters},
                       {"fd_step", cfg.fd_step},
                       {"multistart", cfg.multistart},
                       {"horizon", cfg.horizon}};
        out.stream() << j.dump(2) << "\n";
    } else {
        std::vector<std::string> comments = {"geosteer plan"};
        std::ostringstream c;
        c << "tol=" << fmt17(cfg.tol) << " max_iters=" << cfg.max_iters
          << " fd_step=" << fmt17(cfg.fd_step) << " multistart=" << cfg.multistart
          << " horizon=" << fmt17(cfg.horizon);
        comments.push_back(c.str());
        std::ostringstream r;
        r << "p0=" << fmt17(result.p0.p1) << "," << fmt17(result.p0.p2)
          << " residual=" << fmt17(result.residual) << " iterations=" << result.iterations
          << " converged=" << (result.converged ? "true" : "false")
          << " seed_index=" << result.seed_index;
        comments.push_back(r.str());
        write_trajectory_csv(out.stream(), result.trajectory, comments);
    }
    return 0;
}

int cmd_check(const CheckOpts& opts) {
    const CheckFault fault = parse_check_fault(opts.mutate);
    const auto results = run_check_suite(fault);
    bool all_pass = true;
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        std::printf("%-*s  max=%-12.3e tol=%-9.0e %s\n", static_cast<int>(width), r.name.c_str(),
                    r.max_residual, r.tolerance, r.pass ? "PASS" : "FAIL");
        all_pass = all_pass && r.pass;
    }
    std::printf("%s\n", all_pass ? "all checks passed" : "CHECK FAILURES PRESENT");
    return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Geometric optimal-control toolkit: Hamiltonian extremal flows, analytic "
                 "extremals, frame curvature and shooting-method steering on the plane"};
    app.require_subcommand(1);

    IntegrateOpts integrate_opts;
    auto* integrate_cmd =
        app.add_subcommand("integrate", "Integrate the extremal flow and write the trajectory");
    integrate_cmd->add_option("--frame", integrate_opts.common.frame, "Frame name")
        ->capture_default_str();
    integrate_cmd->add_option("--q0", integrate_opts.q0, "Initial state q1,q2")->required();
    integrate_cmd->add_option("--p0", integrate_opts.p0, "Initial costate p1,p2")->required();
    integrate_cmd->add_option("--t0", integrate_opts.t0, "Start time")->capture_default_str();
    integrate_cmd->add_option("--t1", integrate_opts.t1, "End time")->capture_default_str();
    integrate_cmd->add_option("--step", integrate_opts.cfg.step, "Fixed step (rk4) / initial step (rk45)")
        ->capture_default_str();
    integrate_cmd->add_option("--method", integrate_opts.method, "Integrator")
        ->check(CLI::IsMember({"rk4", "rk45"}))
        ->capture_default_str();
    integrate_cmd->add_option("--rel-tol", integrate_opts.cfg.rel_tol, "Adaptive relative tolerance")
        ->capture_default_str();
    integrate_cmd->add_option("--abs-tol", integrate_opts.cfg.abs_tol, "Adaptive absolute tolerance")
        ->capture_default_str();
    integrate_cmd->add_option("--max-steps", integrate_opts.cfg.max_steps, "Step budget")
        ->capture_default_str();
    integrate_cmd->add_option("--rhs", integrate_opts.rhs, "System to integrate")
        ->check(CLI::IsMember({"full", "reduced"}))
        ->capture_default_str();
    add_format_output(integrate_cmd, integrate_opts.common, "csv");

    ClosedFormOpts closed_opts;
    auto* closed_cmd = app.add_subcommand(
        "closedform", "Sample the analytic extremal: phase, controls, theta and kappa_g");
    closed_cmd->add_option("--c1", closed_opts.params.c1, "Clairaut constant C1")->required();
    closed_cmd->add_option("--c2", closed_opts.params.c2, "Time shift C2")->capture_default_str();
    closed_cmd->add_option("--c3", closed_opts.params.c3, "q2 offset C3")->capture_default_str();
    auto* t_opt = closed_cmd->add_option("--t", closed_opts.t, "Single sample time");
    closed_cmd->add_option("--t0", closed_opts.t0, "Sweep start")->capture_default_str();
    closed_cmd->add_option("--t1", closed_opts.t1, "Sweep end")->capture_default_str();
    closed_cmd->add_option("--samples", closed_opts.samples, "Sweep sample count")
        ->capture_default_str();
    add_format_output(closed_cmd, closed_opts.common, "csv");

    CurvatureOpts curvature_opts;
    auto* curvature_cmd = app.add_subcommand(
        "curvature", "Structure functions, Lie bracket and Gaussian curvature at a point or grid");
    curvature_cmd->add_option("--frame", curvature_opts.common.frame, "Frame name")
        ->capture_default_str();
    curvature_cmd->add_option("--q", curvature_opts.q, "Evaluation point q1,q2");
    curvature_cmd->add_option("--q1", curvature_opts.q1_axis, "Grid axis lo:hi:count");
    curvature_cmd->add_option("--q2", curvature_opts.q2_axis, "Grid axis lo:hi:count");
    add_format_output(curvature_cmd, curvature_opts.common, "json");

    PlanOpts plan_opts;
    auto* plan_cmd =
        app.add_subcommand("plan", "Shooting-method steering from --q0 to --goal over the horizon");
    plan_cmd->add_option("--frame", plan_opts.common.frame, "Frame name")->capture_default_str();
    plan_cmd->add_option("--q0", plan_opts.q0, "Initial state q1,q2")->required();
    plan_cmd->add_option("--goal", plan_opts.goal, "Goal state q1,q2")->required();
    plan_cmd->add_option("--horizon", plan_opts.cfg.horizon, "Terminal time")->capture_default_str();
    plan_cmd->add_option("--tol", plan_opts.cfg.tol, "Endpoint residual target")
        ->capture_default_str();
    plan_cmd->add_option("--max-iters", plan_opts.cfg.max_iters, "Newton iterations per seed")
        ->capture_default_str();
    plan_cmd->add_option("--fd-step", plan_opts.cfg.fd_step, "Jacobian differencing step")
        ->capture_default_str();
    plan_cmd->add_option("--multistart", plan_opts.cfg.multistart, "Seed count")
        ->capture_default_str();
    plan_cmd->add_option("--step", plan_opts.cfg.integrator.step, "Integrator step")
        ->capture_default_str();
    plan_cmd->add_option("--method", plan_opts.method, "Integrator")
        ->check(CLI::IsMember({"rk4", "rk45"}))
        ->capture_default_str();
    plan_cmd->add_option("--rhs", plan_opts.rhs, "System to integrate")
        ->check(CLI::IsMember({"full", "reduced"}))
        ->capture_default_str();
    add_format_output(plan_cmd, plan_opts.common, "json");

    CheckOpts check_opts;
    auto* check_cmd =
        app.add_subcommand("check", "Run the built-in identity suite and print max residuals");
    check_cmd
        ->add_option("--mutate", check_opts.mutate,
                     "Testing only: inject a fault (none, controls, hamiltonian, curvature)")
        ->check(CLI::IsMember({"none", "controls", "hamiltonian", "curvature"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (integrate_cmd->parsed()) return cmd_integrate(integrate_opts);
        if (closed_cmd->parsed()) {
            closed_opts.t_given = t_opt->count() > 0;
            return cmd_closedform(closed_opts);
        }
        if (curvature_cmd->parsed()) return cmd_curvature(curvature_opts);
        if (plan_cmd->parsed()) return cmd_plan(plan_opts);
        if (check_cmd->parsed()) return cmd_check(check_opts);
    } catch (const CLI::ParseError& e) {
        // late argument-shape validation (e.g. malformed --q0 pairs)
        std::cerr << "geosteer: " << e.what() << "\nRun with --help for more information.\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "geosteer: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace geosteer
