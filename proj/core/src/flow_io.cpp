#include "solvflow/flow_io.hpp"

#include <charconv>
#include <istream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "solvflow/errors.hpp"

namespace solvflow {

RunMetadata metadata_for(const FlowProblem& p) {
  RunMetadata m;
  if (p.params) {
    m.model = std::string(to_string(p.params->model()));
    for (Param q : model_parameters(p.params->model()))
      m.params.emplace_back(std::string(to_string(q)), p.params->get(q));
    m.epsilon = p.params->epsilon();
  }
  m.lambda = p.initial.lambda();
  m.t_end = p.t_end;
  m.rel_tol = p.rel_tol;
  m.abs_tol = p.abs_tol;
  m.offdiag_tol = p.offdiag_tol;
  m.rhs_source = std::string(to_string(p.source));
  return m;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidArgument("not a number: '" + std::string(s) + "'");
  return v;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  os << kCsvHeader << '\n';
  for (const auto& s : traj.samples) {
    os << format_double(s.t);
    for (double g : s.g) os << ',' << format_double(g);
    os << ',' << format_double(s.max_drift) << ',' << format_double(s.max_offdiag) << '\n';
  }
}

Trajectory read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw InvalidArgument("unexpected CSV header: '" + line + "'");
  Trajectory traj;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<double> f;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      f.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 8) throw InvalidArgument("line " + std::to_string(lineno) + ": expected 8 fields");
    Sample s;
    s.t = f[0];
    for (std::size_t i = 0; i < kDim; ++i) s.g[i] = f[1 + i];
    s.max_drift = f[6];
    s.max_offdiag = f[7];
    if (!traj.samples.empty() && !(s.t > traj.samples.back().t))
      throw InvalidArgument("line " + std::to_string(lineno) + ": times must increase");
    traj.samples.push_back(s);
  }
  if (traj.samples.empty()) throw InvalidArgument("trajectory has no samples");
  return traj;
}

std::string to_json(const Trajectory& traj, const RunMetadata& meta) {
  using nlohmann::json;
  json j;
  json m;
  m["model"] = meta.model;
  json params = json::object();
  for (const auto& [k, v] : meta.params) params[k] = v;
  m["params"] = params;
  m["epsilon"] = meta.epsilon;
  m["lambda"] = meta.lambda;
  m["t_end"] = meta.t_end;
  m["rel_tol"] = meta.rel_tol;
  m["abs_tol"] = meta.abs_tol;
  m["offdiag_tol"] = meta.offdiag_tol;
  m["rhs_source"] = meta.rhs_source;
  m["termination"] = std::string(to_string(traj.termination));
  if (!traj.message.empty()) m["message"] = traj.message;
  m["error_estimate"] = traj.error_estimate;
  m["steps_accepted"] = traj.steps_accepted;
  m["steps_rejected"] = traj.steps_rejected;
  j["metadata"] = m;
  j["columns"] = {"t", "A", "B", "C", "D", "E", "max_drift", "max_offdiag"};
  json rows = json::array();
  for (const auto& s : traj.samples)
    rows.push_back({s.t, s.g[0], s.g[1], s.g[2], s.g[3], s.g[4], s.max_drift, s.max_offdiag});
  j["samples"] = rows;
  return j.dump(1);
}

std::pair<Trajectory, RunMetadata> read_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed trajectory JSON: ") + e.what());
  }
  Trajectory traj;
  RunMetadata meta;
  try {
    const json& m = j.at("metadata");
    meta.model = m.value("model", "custom");
    if (m.contains("params"))
      for (const auto& [k, v] : m["params"].items()) meta.params.emplace_back(k, v.get<double>());
    meta.epsilon = m.value("epsilon", 1);
    meta.lambda = m.at("lambda").get<Vec5>();
    meta.t_end = m.value("t_end", 0.0);
    meta.rel_tol = m.value("rel_tol", 0.0);
    meta.abs_tol = m.value("abs_tol", 0.0);
    meta.offdiag_tol = m.value("offdiag_tol", 0.0);
    meta.rhs_source = m.value("rhs_source", "curvature");
    if (const auto t = parse_termination(m.value("termination", "reached_t_end"))) traj.termination = *t;
    traj.message = m.value("message", "");
    traj.error_estimate = m.value("error_estimate", 0.0);
    traj.steps_accepted = m.value("steps_accepted", std::size_t{0});
    traj.steps_rejected = m.value("steps_rejected", std::size_t{0});
    for (const auto& row : j.at("samples")) {
      if (row.size() != 8) throw InvalidArgument("trajectory JSON row must have 8 entries");
      Sample s;
      s.t = row[0].get<double>();
      for (std::size_t i = 0; i < kDim; ++i) s.g[i] = row[1 + i].get<double>();
      s.max_drift = row[6].get<double>();
      s.max_offdiag = row[7].get<double>();
      traj.samples.push_back(s);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed trajectory JSON: ") + e.what());
  }
  if (traj.samples.empty()) throw InvalidArgument("trajectory has no samples");
  return {std::move(traj), std::move(meta)};
}

Trajectory read_trajectory(std::istream& is) {
  const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_json(text).first;
  std::istringstream in(text);
  return read_csv(in);
}

}  // namespace solvflow
