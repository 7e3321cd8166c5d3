#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solvflow/flow.hpp"

namespace solvflow {

struct RunMetadata {
  std::string model = "custom";
  std::vector<std::pair<std::string, double>> params;
  int epsilon = 1;
  Vec5 lambda{};
  double t_end = 0.0;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  double offdiag_tol = 0.0;
  std::string rhs_source = "curvature";
};

RunMetadata metadata_for(const FlowProblem& p);

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view s);

inline constexpr std::string_view kCsvHeader = "t,A,B,C,D,E,max_drift,max_offdiag";

void write_csv(std::ostream& os, const Trajectory& traj);
// Termination metadata is not part of the CSV; it reads back as reached_t_end.
Trajectory read_csv(std::istream& is);

std::string to_json(const Trajectory& traj, const RunMetadata& meta);
std::pair<Trajectory, RunMetadata> read_json(std::string_view text);

// Either format, detected from the first non-blank character.
Trajectory read_trajectory(std::istream& is);

}  // namespace solvflow
