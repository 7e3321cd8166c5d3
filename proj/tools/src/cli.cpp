#include "solvflow_cli/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "solvflow/asymptotics.hpp"
#include "solvflow/catalog.hpp"
#include "solvflow/errors.hpp"
#include "solvflow/flow.hpp"
#include "solvflow/flow_io.hpp"
#include "solvflow/invariants.hpp"
#include "solvflow/verify.hpp"

namespace solvflow::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double number(const std::string& s, const std::string& what) {
  try {
    return parse_double(s);
  } catch (const Error&) {
    throw UsageError("invalid number '" + s + "' in " + what);
  }
}

ModelId model_arg(const std::string& s) {
  if (auto m = parse_model(s)) return *m;
  throw UsageError("unknown model '" + s + "' (expected D1, D2, D3, D5 or D11)");
}

Vec5 lambda_arg(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != kDim) throw UsageError("--lambda takes five comma-separated values");
  Vec5 l;
  for (std::size_t i = 0; i < kDim; ++i) {
    l[i] = number(parts[i], "--lambda");
    if (!(l[i] > 0.0) || !std::isfinite(l[i])) throw UsageError("--lambda values must be positive");
  }
  return l;
}

std::pair<double, double> window_arg(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("--window takes lo,hi");
  const double lo = number(parts[0], "--window"), hi = number(parts[1], "--window");
  if (!(lo > 0.0 && hi > lo)) throw UsageError("--window needs 0 < lo < hi");
  return {lo, hi};
}

std::size_t component_arg(const std::string& s) {
  for (std::size_t i = 0; i < kDim; ++i)
    if (s == kComponentNames[i]) return i;
  throw UsageError("--component must be one of A, B, C, D, E");
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("solvflow", sink);
  log->set_pattern("[%l] %v");
  const char* env = std::getenv("SOLVFLOW_LOG");
  const std::string level = env ? env : "off";
  if (level == "debug")
    log->set_level(spdlog::level::debug);
  else if (level == "info")
    log->set_level(spdlog::level::info);
  else
    log->set_level(spdlog::level::off);
  return log;
}

// ---------------------------------------------------------------------------

int cmd_list(std::ostream& out) {
  for (ModelId id : kModels) {
    const ModelSpec s = model_spec(id);
    out << to_string(id) << "\t" << s.description << "\n";
  }
  return kExitOk;
}

int cmd_describe(const std::string& model, bool json, std::ostream& out) {
  const ModelId id = model_arg(model);
  out << (json ? describe_json(id) : describe_text(id));
  if (json) out << "\n";
  return kExitOk;
}

struct FlowArgs {
  std::string model, lambda, out, format = "csv", system = "curvature";
  double t_end = 0.0;
  std::optional<double> rtol, atol;
};

int cmd_flow(const FlowArgs& a, spdlog::logger& log, std::ostream& out, std::ostream& err) {
  const ModelId id = model_arg(a.model);
  const Vec5 lambda = lambda_arg(a.lambda);
  if (!(a.t_end > 0.0)) throw UsageError("--t-end must be positive");
  const auto src = parse_rhs_source(a.system);
  if (!src) throw UsageError("--system must be curvature or tabulated");
  if (a.format != "csv" && a.format != "json") throw UsageError("--format must be csv or json");

  FlowProblem p = FlowProblem::for_model(constrained_params(id), lambda, a.t_end);
  if (a.rtol) p.rel_tol = *a.rtol;
  if (a.atol) p.abs_tol = *a.atol;
  p.source = *src;
  log.info("integrating {} to t = {} (rtol {}, atol {})", to_string(id), a.t_end, p.rel_tol, p.abs_tol);
  const auto t0 = std::chrono::steady_clock::now();
  const Trajectory traj = integrate(p);
  log.info("{} accepted / {} rejected steps in {:.3f} s", traj.steps_accepted, traj.steps_rejected,
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

  std::ofstream file(a.out);
  if (!file) {
    err << "solvflow: cannot open " << a.out << " for writing\n";
    return kExitFailed;
  }
  if (a.format == "csv")
    write_csv(file, traj);
  else
    file << to_json(traj, metadata_for(p)) << "\n";
  file.close();
  if (!file) {
    err << "solvflow: write to " << a.out << " failed\n";
    return kExitFailed;
  }

  const Sample& last = traj.back();
  out << "model " << to_string(id) << ", " << traj.samples.size() << " samples, termination "
      << to_string(traj.termination) << "\n";
  out << "t = " << format_double(last.t);
  for (std::size_t i = 0; i < kDim; ++i) out << "  " << kComponentNames[i] << " = " << format_double(last.g[i]);
  out << "\n";
  if (traj.termination != Termination::reached_t_end) {
    err << "solvflow: integration stopped early: " << traj.message << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_invariants(const std::string& model, int max_exp, std::optional<std::uint64_t> seed, std::ostream& out) {
  const ModelId id = model_arg(model);
  if (max_exp < 1 || max_exp > 12) throw UsageError("--max-exp must lie in [1, 12]");
  DetectionOptions opt;
  if (seed) opt.seed = *seed;
  const auto found = detect_monomials(constrained_params(id), max_exp, opt);
  out << found.size() << " conserved exponent vectors with |e_i| <= " << max_exp << "\n";
  for (const auto& m : found) {
    const auto& e = m.exponents();
    out << "(" << e[0] << ", " << e[1] << ", " << e[2] << ", " << e[3] << ", " << e[4] << ")  " << m.str() << "\n";
  }
  const auto basis = lattice_basis(std::span<const InvariantMonomial>(found));
  out << "lattice basis:\n";
  for (const auto& e : basis)
    out << "  (" << e[0] << ", " << e[1] << ", " << e[2] << ", " << e[3] << ", " << e[4] << ")\n";
  for (const auto& m : model_invariants(id).monomials) {
    const bool hit = std::find(found.begin(), found.end(), m) != found.end();
    out << "catalog invariant " << m.str() << (hit ? ": detected" : ": not detected") << "\n";
  }
  return kExitOk;
}

int cmd_fit(const std::string& in, const std::string& component, const std::string& window, bool json,
            std::ostream& out, std::ostream& err) {
  const std::size_t c = component_arg(component);
  std::optional<std::pair<double, double>> w;
  if (!window.empty()) w = window_arg(window);
  std::ifstream file(in);
  if (!file) {
    err << "solvflow: cannot open " << in << "\n";
    return kExitFailed;
  }
  const Trajectory traj = read_trajectory(file);
  const PowerLawFit f = fit_power_law(traj, c, w);
  if (json) {
    nlohmann::json j{{"component", component},         {"exponent", f.exponent},
                     {"log_prefactor", f.log_prefactor}, {"r_squared", f.r_squared},
                     {"t_lo", f.t_lo},                   {"t_hi", f.t_hi},
                     {"samples", f.n}};
    out << j.dump(2) << "\n";
  } else {
    out << "component " << component << "\n"
        << "exponent " << format_double(f.exponent) << "\n"
        << "log_prefactor " << format_double(f.log_prefactor) << "\n"
        << "r_squared " << format_double(f.r_squared) << "\n"
        << "window " << format_double(f.t_lo) << " " << format_double(f.t_hi) << "\n"
        << "samples " << f.n << "\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& model, std::optional<std::uint64_t> seed, const std::string& report,
              spdlog::logger& log, std::ostream& out, std::ostream& err) {
  VerifyOptions opt;
  if (!model.empty()) opt.model = model_arg(model);
  if (seed) opt.seed = *seed;

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::future<CriterionResult>> jobs;
  for (int id = 1; id <= kCriterionCount; ++id)
    jobs.push_back(std::async(std::launch::async, [id, &opt] { return run_criterion(id, opt); }));
  std::vector<CriterionResult> results;
  for (auto& j : jobs) {
    results.push_back(j.get());
    log.debug("criterion {} finished in {:.2f} s", results.back().id, results.back().seconds);
  }

  bool all = true;
  for (const auto& r : results) {
    const char* tag = !r.applicable ? "SKIP" : (r.passed ? "PASS" : "FAIL");
    if (r.applicable && !r.passed) all = false;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
    out << "[" << tag << "] " << r.id << ". " << r.title << " (" << secs << " s): " << r.summary() << "\n";
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", total);
  out << (all ? "all criteria passed" : "some criteria failed") << " in " << secs << " s\n";

  if (!report.empty()) {
    std::ofstream file(report);
    file << verification_report_json(results, opt) << "\n";
    if (!file) {
      err << "solvflow: cannot write report to " << report << "\n";
      return kExitFailed;
    }
    out << "report written to " << report << "\n";
  }
  return all ? kExitOk : kExitFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ricci flow on five solvable contact Lie groups", "solvflow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "solvflow 0.1.0");

  auto* list = app.add_subcommand("list", "List the catalog models");

  std::string model;
  bool json = false;
  auto* describe = app.add_subcommand("describe", "Brackets, constraints, invariants and exponents of a model");
  describe->add_option("model", model, "Model id")->required();
  describe->add_flag("--json", json, "Emit JSON");

  FlowArgs fa;
  double rtol = 0.0, atol = 0.0;
  auto* flow = app.add_subcommand("flow", "Integrate the flow and write the trajectory");
  flow->add_option("model", fa.model, "Model id")->required();
  flow->add_option("--lambda", fa.lambda, "Initial metric l1,l2,l3,l4,l5")->required();
  flow->add_option("--t-end", fa.t_end, "Final time")->required();
  auto* rtol_opt = flow->add_option("--rtol", rtol, "Relative tolerance");
  auto* atol_opt = flow->add_option("--atol", atol, "Absolute tolerance");
  flow->add_option("--out", fa.out, "Output path")->required();
  flow->add_option("--format", fa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  flow->add_option("--system", fa.system, "curvature or tabulated")->check(CLI::IsMember({"curvature", "tabulated"}));

  int max_exp = 5;
  std::uint64_t seed = 0;
  auto* inv = app.add_subcommand("invariants", "Detect conserved monomials");
  inv->add_option("model", model, "Model id")->required();
  inv->add_option("--max-exp", max_exp, "Largest |exponent| searched");
  auto* inv_seed = inv->add_option("--seed", seed, "Seed for the random test metrics");

  std::string in, component, window;
  auto* fit = app.add_subcommand("fit", "Fit a power law to one metric component");
  fit->add_option("--in", in, "Trajectory file (csv or json)")->required();
  fit->add_option("--component", component, "A, B, C, D or E")->required();
  fit->add_option("--window", window, "Fit window lo,hi");
  fit->add_flag("--json", json, "Emit JSON");

  std::string report = "verification_report.json";
  auto* check = app.add_subcommand("check", "Run the acceptance criteria");
  check->add_option("model", model, "Restrict to one model");
  auto* check_seed = check->add_option("--seed", seed, "Seed for randomized checks");
  check->add_option("--report", report, "Report path (empty to skip)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto log = make_logger(err);
  try {
    if (list->parsed()) return cmd_list(out);
    if (describe->parsed()) return cmd_describe(model, json, out);
    if (flow->parsed()) {
      if (*rtol_opt) fa.rtol = rtol;
      if (*atol_opt) fa.atol = atol;
      return cmd_flow(fa, *log, out, err);
    }
    if (inv->parsed())
      return cmd_invariants(model, max_exp, *inv_seed ? std::optional<std::uint64_t>(seed) : std::nullopt, out);
    if (fit->parsed()) return cmd_fit(in, component, window, json, out, err);
    if (check->parsed())
      return cmd_check(model, *check_seed ? std::optional<std::uint64_t>(seed) : std::nullopt, report, *log, out,
                       err);
  } catch (const UsageError& e) {
    err << "solvflow: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionViolation& e) {
    err << "solvflow: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "solvflow: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace solvflow::cli
