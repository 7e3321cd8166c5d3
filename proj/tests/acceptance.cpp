// Acceptance gate: one PASS/FAIL line per criterion. Tolerances live in
// verify.cpp (criteria 1-10) and below (criterion 11).
//
//   acceptance                 all criteria
//   acceptance --criterion N   criterion N only; exit status 0 iff it passes

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>

#include "solvflow/asymptotics.hpp"
#include "solvflow/flow_io.hpp"
#include "solvflow/verify.hpp"
#include "solvflow_cli/cli.hpp"

using namespace solvflow;

namespace {

constexpr double kCheckBudgetSeconds = 300.0;

void print_failures(const CriterionResult& r) {
  for (const auto& c : r.checks) {
    if (c.passed) continue;
    std::cout << "    " << (c.informational ? "info: " : "fail: ") << (c.model.empty() ? "" : c.model + ": ")
              << c.claim << " expected " << c.expected << " computed " << c.computed;
    if (c.tolerance > 0) std::cout << " tol " << c.tolerance;
    if (!c.note.empty()) std::cout << " [" << c.note << "]";
    std::cout << "\n";
  }
}

bool report(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  std::cout << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " (" << secs
            << " s) " << r.summary() << "\n";
  print_failures(r);
  return r.passed;
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  return {};
}

CriterionResult criterion_11() {
  CriterionResult r;
  r.id = 11;
  r.title = "command-line check and round trip";
  const auto t0 = std::chrono::steady_clock::now();

  std::ostringstream out, err;
  const int code = cli::run_command({"check", "--report", "acceptance_report.json"}, out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Check exit_ok{"`check` exits 0", "", 0.0, static_cast<double>(code), 0.0, code == 0, false, {}};
  if (code != 0) {
    std::istringstream lines(out.str());
    for (std::string line; std::getline(lines, line);)
      if (line.rfind("[FAIL] ", 0) == 0) exit_ok.note += (exit_ok.note.empty() ? "" : "; ") + line.substr(7, line.find(" (") - 7);
    exit_ok.note = "failing: " + exit_ok.note;
  }
  r.checks.push_back(exit_ok);
  r.checks.push_back({"`check` runtime [s]", "", 0.0, secs, kCheckBudgetSeconds, secs < kCheckBudgetSeconds, false, {}});

  const std::string csv = "acceptance_roundtrip.csv";
  const Vec5 lambda{1, 1, 1, 1, 1};
  std::ostringstream o2, e2;
  const int flow_code = cli::run_command(
      {"flow", "D2", "--lambda", "1,1,1,1,1", "--t-end", "1e6", "--out", csv}, o2, e2);
  r.checks.push_back({"`flow` exits 0", "D2", 0.0, static_cast<double>(flow_code), 0.0, flow_code == 0, false, {}});
  const Trajectory in_process = integrate(FlowProblem::for_model(constrained_params(ModelId::D2), lambda, 1e6));
  for (std::size_t i = 0; i < kDim; ++i) {
    const std::string comp(kComponentNames[i]);
    for (bool windowed : {true, false}) {
      std::vector<std::string> args{"fit", "--in", csv, "--component", comp};
      if (windowed) args.insert(args.end(), {"--window", "1e4,1e6"});
      std::ostringstream o3, e3;
      const int fit_code = cli::run_command(args, o3, e3);
      const PowerLawFit f = windowed ? fit_power_law(in_process, i, std::pair{1e4, 1e6}) : fit_power_law(in_process, i);
      bool same = fit_code == 0;
      double printed = std::nan("");
      if (same) {
        printed = parse_double(value_of(o3.str(), "exponent"));
        same = printed == f.exponent && parse_double(value_of(o3.str(), "r_squared")) == f.r_squared &&
               parse_double(value_of(o3.str(), "log_prefactor")) == f.log_prefactor;
      }
      r.checks.push_back({"fit on the CSV equals the in-process fit bit for bit (" +
                              std::string(windowed ? "window [1e4, 1e6]" : "default window") + ")",
                          "D2 " + comp, f.exponent, printed, 0.0, same, false, {}});
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = true;
  for (const auto& c : r.checks)
    if (!c.informational && !c.passed) r.passed = false;
  return r;
}

int usage() {
  std::cerr << "usage: acceptance [--criterion N]  (1 <= N <= " << kCriterionCount + 1 << ")\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > kCriterionCount + 1) return usage();
    } else {
      return usage();
    }
  }
  bool ok = true;
  for (int id = 1; id <= kCriterionCount + 1; ++id) {
    if (only && id != only) continue;
    ok = report(id == kCriterionCount + 1 ? criterion_11() : run_criterion(id)) && ok;
  }
  return ok ? 0 : 1;
}
