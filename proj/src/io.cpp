#include "geosteer/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace geosteer {

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const char* to_cstring(RhsKind kind) {
    return kind == RhsKind::Full ? "full" : "reduced";
}

const char* to_cstring(Method method) {
    return method == Method::RK4 ? "rk4" : "rk45";
}

RhsKind parse_rhs_kind(const std::string& s) {
    if (s == "full") return RhsKind::Full;
    if (s == "reduced") return RhsKind::Reduced;
    throw std::invalid_argument("unknown rhs kind '" + s + "' (valid: full, reduced)");
}

Method parse_method(const std::string& s) {
    if (s == "rk4") return Method::RK4;
    if (s == "rk45") return Method::RK45;
    throw std::invalid_argument("unknown method '" + s + "' (valid: rk4, rk45)");
}

std::array<double, 10> trajectory_row(const Trajectory& traj, std::size_t i) {
    const PhasePoint& pt = traj.points[i];
    const Control& u = traj.controls[i];
    return {traj.times[i],
            pt.state.q1,
            pt.state.q2,
            pt.costate.p1,
            pt.costate.p2,
            u.u1,
            u.u2,
            traj.hamiltonian[i],
            u.norm2(),
            pt.state.q1 * pt.state.q1 + pt.state.q2 * pt.state.q2};
}

namespace {

std::string meta_comment(const TrajectoryMeta& meta) {
    std::ostringstream os;
    os << "frame=" << meta.frame << " rhs=" << to_cstring(meta.kind)
       << " method=" << to_cstring(meta.config.method) << " step=" << fmt17(meta.config.step)
       << " rel_tol=" << fmt17(meta.config.rel_tol) << " abs_tol=" << fmt17(meta.config.abs_tol)
       << " max_steps=" << meta.config.max_steps << " t0=" << fmt17(meta.t0)
       << " t1=" << fmt17(meta.t1);
    return os.str();
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::string>& comments) {
    for (const auto& c : comments) os << "# " << c << "\n";
    os << "# " << meta_comment(traj.meta) << "\n";
    os << kTrajectoryCsvHeader << "\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto row = trajectory_row(traj, i);
        for (std::size_t k = 0; k < row.size(); ++k)
            os << (k ? "," : "") << fmt17(row[k]);
        os << "\n";
    }
}

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::size_t start = 1;
            if (start < line.size() && line[start] == ' ') ++start;
            table.comments.push_back(line.substr(start));
            continue;
        }
        if (table.header.empty()) {
            table.header = line;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_csv(std::ostream& os, const CsvTable& table) {
    for (const auto& c : table.comments) os << "# " << c << "\n";
    os << table.header << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k)
            os << (k ? "," : "") << fmt17(row[k]);
        os << "\n";
    }
}

Trajectory trajectory_from_csv(const CsvTable& table) {
    if (table.header != kTrajectoryCsvHeader)
        throw std::invalid_argument("trajectory_from_csv: unexpected header '" + table.header +
                                    "'");
    Trajectory traj;
    for (const auto& comment : table.comments) {
        std::stringstream ss(comment);
        std::string kv;
        while (ss >> kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = kv.substr(0, eq);
            const std::string value = kv.substr(eq + 1);
            try {
                if (key == "frame") traj.meta.frame = value;
                else if (key == "rhs") traj.meta.kind = parse_rhs_kind(value);
                else if (key == "method") traj.meta.config.method = parse_method(value);
                else if (key == "step") traj.meta.config.step = std::stod(value);
                else if (key == "rel_tol") traj.meta.config.rel_tol = std::stod(value);
                else if (key == "abs_tol") traj.meta.config.abs_tol = std::stod(value);
                else if (key == "max_steps") traj.meta.config.max_steps = std::stoll(value);
                else if (key == "t0") traj.meta.t0 = std::stod(value);
                else if (key == "t1") traj.meta.t1 = std::stod(value);
            } catch (const std::exception&) {
                // free-form comment that happened to contain '='
            }
        }
    }
    for (const auto& row : table.rows) {
        if (row.size() != 10)
            throw std::invalid_argument("trajectory_from_csv: row has wrong column count");
        traj.times.push_back(row[0]);
        traj.points.push_back({{row[1], row[2]}, {row[3], row[4]}});
        traj.controls.push_back({row[5], row[6]});
        traj.hamiltonian.push_back(row[7]);
    }
    return traj;
}

nlohmann::json meta_to_json(const TrajectoryMeta& meta) {
    return {{"frame", meta.frame},
            {"rhs", to_cstring(meta.kind)},
            {"method", to_cstring(meta.config.method)},
            {"step", meta.config.step},
            {"rel_tol", meta.config.rel_tol},
            {"abs_tol", meta.config.abs_tol},
            {"max_steps", meta.config.max_steps},
            {"t0", meta.t0},
            {"t1", meta.t1}};
}

nlohmann::json trajectory_to_json(const Trajectory& traj) {
    nlohmann::json samples = nlohmann::json::array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto row = trajectory_row(traj, i);
        samples.push_back({{"t", row[0]},
                           {"q1", row[1]},
                           {"q2", row[2]},
                           {"p1", row[3]},
                           {"p2", row[4]},
                           {"u1", row[5]},
                           {"u2", row[6]},
                           {"h", row[7]},
                           {"unorm2", row[8]},
                           {"qnorm2", row[9]}});
    }
    return {{"meta", meta_to_json(traj.meta)}, {"samples", samples}};
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
    Trajectory traj;
    const auto& meta = j.at("meta");
    traj.meta.frame = meta.at("frame").get<std::string>();
    traj.meta.kind = parse_rhs_kind(meta.at("rhs").get<std::string>());
    traj.meta.config.method = parse_method(meta.at("method").get<std::string>());
    traj.meta.config.step = meta.at("step").get<double>();
    traj.meta.config.rel_tol = meta.at("rel_tol").get<double>();
    traj.meta.config.abs_tol = meta.at("abs_tol").get<double>();
    traj.meta.config.max_steps = meta.at("max_steps").get<std::int64_t>();
    traj.meta.t0 = meta.at("t0").get<double>();
    traj.meta.t1 = meta.at("t1").get<double>();
    for (const auto& s : j.at("samples")) {
        traj.times.push_back(s.at("t").get<double>());
        traj.points.push_back({{s.at("q1").get<double>(), s.at("q2").get<double>()},
                               {s.at("p1").get<double>(), s.at("p2").get<double>()}});
        traj.controls.push_back({s.at("u1").get<double>(), s.at("u2").get<double>()});
        traj.hamiltonian.push_back(s.at("h").get<double>());
    }
    return traj;
}

nlohmann::json plan_result_to_json(const PlanResult& result) {
    return {{"p0", {{"p1", result.p0.p1}, {"p2", result.p0.p2}}},
            {"residual", result.residual},
            {"iterations", result.iterations},
            {"converged", result.converged},
            {"seed_index", result.seed_index},
            {"trajectory", trajectory_to_json(result.trajectory)}};
}

nlohmann::json conservation_to_json(const ConservationReport& report) {
    nlohmann::json j = {{"h_drift", report.h_drift},
                        {"unorm2_drift", report.unorm2_drift},
                        {"qnorm2_drift", report.qnorm2_drift}};
    if (report.identity_residual)
        j["identity_residual"] = *report.identity_residual;
    else
        j["identity_residual"] = nullptr;
    return j;
}

}  // namespace geosteer
