#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "solvflow/asymptotics.hpp"
#include "solvflow/flow_io.hpp"
#include "solvflow_cli/cli.hpp"

using namespace solvflow;
using solvflow::cli::run_command;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string line_value(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  return {};
}

}  // namespace

TEST_CASE("list") {
  const auto r = run({"list"});
  CHECK(r.code == 0);
  for (const char* id : {"D1", "D2", "D3", "D5", "D11"}) CHECK(r.out.find(id) != std::string::npos);
}

TEST_CASE("describe") {
  auto r = run({"describe", "D3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(-4/11, -1/11, 2/11, 5/11, 8/11)") != std::string::npos);
  r = run({"describe", "D5", "--json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("model") == "D5");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"describe", "D4"}).code == 2);
  CHECK(run({"flow", "D5", "--lambda", "1,1,1", "--t-end", "1", "--out", "x.csv"}).code == 2);
  CHECK(run({"flow", "D5", "--lambda", "1,1,1,1,-1", "--t-end", "1", "--out", "x.csv"}).code == 2);
  CHECK(run({"flow", "D5", "--lambda", "1,1,1,1,1", "--t-end", "1", "--out", "x.csv", "--format", "xml"}).code == 2);
  CHECK(run({"fit", "--in", "x.csv", "--component", "F"}).code == 2);
  const auto r = run({"invariants", "D3", "--max-exp", "0"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"fit", "--in", "does-not-exist.csv", "--component", "A"}).code == 1);
}

TEST_CASE("flow writes a CSV trajectory") {
  const std::string path = "cli_d5.csv";
  const auto r = run({"flow", "D5", "--lambda", "1,1,1,1,1", "--t-end", "1", "--out", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  std::vector<double> v;
  std::istringstream row(last);
  for (std::string f; std::getline(row, f, ',');) v.push_back(parse_double(f));
  REQUIRE(v.size() == 8);
  CHECK(v[0] == 1.0);
  CHECK(std::abs(v[4] - 1.0) < 1e-8);
  CHECK(std::abs(v[5] - 5.0) < 1e-8);
}

TEST_CASE("flow with JSON output") {
  const std::string path = "cli_d11.json";
  REQUIRE(run({"flow", "D11", "--lambda", "1,2,1,1,1", "--t-end", "10", "--out", path, "--format", "json",
               "--system", "tabulated", "--rtol", "1e-10", "--atol", "1e-12"})
              .code == 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j.at("metadata").at("rhs_source") == "tabulated");
  CHECK(j.at("metadata").at("rel_tol") == 1e-10);
}

TEST_CASE("fit round trip is bit-identical") {
  const std::string path = "cli_d2.csv";
  REQUIRE(run({"flow", "D2", "--lambda", "1,1,1,1,1", "--t-end", "1e6", "--out", path}).code == 0);
  const auto r = run({"fit", "--in", path, "--component", "E", "--window", "1e4,1e6"});
  REQUIRE(r.code == 0);
  const double printed = parse_double(line_value(r.out, "exponent"));
  CHECK(std::abs(printed - 4.0 / 7.0) < 0.01);

  const Trajectory t = integrate(FlowProblem::for_model(constrained_params(ModelId::D2), {1, 1, 1, 1, 1}, 1e6));
  const PowerLawFit f = fit_power_law(t, 4, std::pair{1e4, 1e6});
  CHECK(printed == f.exponent);
  CHECK(parse_double(line_value(r.out, "r_squared")) == f.r_squared);
  CHECK(parse_double(line_value(r.out, "log_prefactor")) == f.log_prefactor);

  const auto dflt = run({"fit", "--in", path, "--component", "E", "--json"});
  REQUIRE(dflt.code == 0);
  CHECK(nlohmann::json::parse(dflt.out).at("exponent").get<double>() == fit_power_law(t, 4).exponent);
}

TEST_CASE("invariants") {
  const auto r = run({"invariants", "D3", "--max-exp", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(5, 4, 3, 2, 1)") != std::string::npos);
  CHECK(r.out.find("A^5 B^4 C^3 D^2 E: detected") != std::string::npos);
}

TEST_CASE("check is deterministic for a fixed seed") {
  const auto a = run({"check", "D5", "--seed", "7", "--report", "report_a.json"});
  const auto b = run({"check", "D5", "--seed", "7", "--report", "report_b.json"});
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  auto strip = [](const std::string& path) {
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    for (auto& c : j.at("criteria")) {
      c.erase("seconds");
      c.erase("summary");
      for (auto& k : c.at("checks"))
        if (k.at("claim") == "runtime [s]") k.erase("computed");
    }
    return j;
  };
  const auto ja = strip("report_a.json");
  CHECK(ja == strip("report_b.json"));
  CHECK(ja.at("seed") == 7);
  CHECK(ja.at("all_passed") == true);
}
