#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "geosteer/flow.hpp"
#include "geosteer/planner.hpp"

namespace geosteer {

/// Trajectory tables always carry exactly these columns, in this order.
inline constexpr const char* kTrajectoryCsvHeader =
    "t,q1,q2,p1,p2,u1,u2,H,unorm2,qnorm2";

/// Serializes a double with 17 significant digits (lossless round-trip).
std::string fmt17(double x);

const char* to_cstring(RhsKind kind);
const char* to_cstring(Method method);
RhsKind parse_rhs_kind(const std::string& s);
Method parse_method(const std::string& s);

/// One table row: t, q1, q2, p1, p2, u1, u2, H, |u|^2, |q|^2.
std::array<double, 10> trajectory_row(const Trajectory& traj, std::size_t i);

/// Writes '#'-prefixed comment lines (caller's, then the run metadata),
/// the exact column header, and one row per sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::string>& comments = {});

/// Generic CSV of doubles with '#' comment lines.
struct CsvTable {
    std::vector<std::string> comments;  ///< without the leading "# "
    std::string header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(std::istream& is);
void write_csv(std::ostream& os, const CsvTable& table);

/// Rebuilds a trajectory from a table with the trajectory schema.
/// Metadata is recovered from key=value comments when present.
Trajectory trajectory_from_csv(const CsvTable& table);

nlohmann::json meta_to_json(const TrajectoryMeta& meta);
nlohmann::json trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const nlohmann::json& j);
nlohmann::json plan_result_to_json(const PlanResult& result);
nlohmann::json conservation_to_json(const ConservationReport& report);

}  // namespace geosteer
