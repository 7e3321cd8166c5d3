#include <doctest.h>

#include <cmath>

#include "solvflow/catalog.hpp"
#include "solvflow/errors.hpp"
#include "solvflow/flow.hpp"
#include "solvflow/invariants.hpp"

using namespace solvflow;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Trajectory run(ModelId id, const Vec5& l, double t_end) {
  return integrate(FlowProblem::for_model(constrained_params(id), l, t_end));
}

// Independent check of the D5 exact solution: the ODE system itself at the
// closed-form point, evaluated with finite differences in t.
Vec5 d5_exact(const Vec5& l, double t) {
  const double s = 1.0 + 3.0 * l[0] * t / (l[1] * l[2]);
  return {l[0] / std::cbrt(s), l[1] * std::cbrt(s), l[2] * std::cbrt(s), l[3], 4.0 * t + l[4]};
}

}  // namespace

TEST_CASE("closed-form D5 formula solves the tabulated system") {
  const Vec5 l{1.3, 0.7, 2.2, 0.9, 1.1};
  for (double t : {0.1, 1.0, 7.0}) {
    const double h = 1e-4 * (1 + t);
    const Vec5 gp = d5_exact(l, t + h), gm = d5_exact(l, t - h), g = d5_exact(l, t);
    const Vec5 f = tabulated_flow_system(ModelId::D5, g);
    for (std::size_t i = 0; i < kDim; ++i) CHECK((gp[i] - gm[i]) / (2 * h) == doctest::Approx(f[i]).epsilon(1e-7));
  }
}

TEST_CASE("D5 unit run to t = 1") {
  const Trajectory t = run(ModelId::D5, {1, 1, 1, 1, 1}, 1.0);
  CHECK(t.termination == Termination::reached_t_end);
  const Vec5& g = t.back().g;
  CHECK(t.back().t == 1.0);
  const double c = std::cbrt(4.0);
  CHECK(rel(g[0], 1.0 / c) < 1e-8);
  CHECK(rel(g[1], c) < 1e-8);
  CHECK(rel(g[2], c) < 1e-8);
  CHECK(rel(g[3], 1.0) < 1e-8);
  CHECK(rel(g[4], 5.0) < 1e-8);
  for (const auto& s : t.samples) {
    CHECK(s.g[3] == 1.0);
    CHECK(std::abs(s.g[4] - (4 * s.t + 1)) < 1e-10);
  }
}

TEST_CASE("sample times") {
  const Trajectory t = run(ModelId::D5, {1, 1, 1, 1, 1}, 100.0);
  const auto ts = t.times();
  CHECK(ts.front() == 0.0);
  CHECK(ts[1] == 1.0 / 16.0);
  CHECK(ts.back() == 100.0);
  CHECK(std::is_sorted(ts.begin(), ts.end()));
  CHECK(std::adjacent_find(ts.begin(), ts.end()) == ts.end());
  // 16 linear samples, 127 log samples strictly inside (1, 100), t_end, and t = 0.
  CHECK(ts.size() == 1 + 16 + 127 + 1);
}

TEST_CASE("D3 self-similar run") {
  const Trajectory t = run(ModelId::D3, {2.0 / 3.0, 1, 1, 1, 1}, 100.0);
  REQUIRE(t.termination == Termination::reached_t_end);
  double worst = 0.0;
  for (const auto& s : t.samples) worst = std::max(worst, rel(s.g[0], (2.0 / 3.0) * std::pow(1 + 11.0 * s.t / 3.0, -4.0 / 11.0)));
  CHECK(worst < 1e-8);
}

TEST_CASE("abelian flow is constant") {
  const Vec5 l{0.3, 2, 5, 0.9, 1.1};
  const Trajectory t = integrate(FlowProblem::for_algebra(StructureConstants(5), l, 1e3));
  CHECK(t.termination == Termination::reached_t_end);
  for (const auto& s : t.samples) CHECK(s.g == l);
}

TEST_CASE("invariants are monitored") {
  const Trajectory t = run(ModelId::D1, {0.7, 1.3, 0.9, 1.1, 1.8}, 1e3);
  double worst = 0.0;
  for (const auto& s : t.samples) worst = std::max(worst, s.max_drift);
  CHECK(worst < 1e-9);
  CHECK(worst > 0.0);
  for (const auto& s : t.samples) CHECK(s.max_offdiag == 0.0);
}

TEST_CASE("halving the tolerance moves the answer by less than the error estimate") {
  FlowProblem p = FlowProblem::for_model(constrained_params(ModelId::D5), {1, 1, 1, 1, 1}, 10.0);
  p.rel_tol = 1e-8;
  p.abs_tol = 1e-10;
  const Trajectory coarse = integrate(p);
  p.rel_tol /= 2;
  p.abs_tol /= 2;
  const Trajectory fine = integrate(p);
  double diff = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    diff = std::max(diff, std::abs(coarse.back().g[i] - fine.back().g[i]) / (p.abs_tol + std::abs(fine.back().g[i])));
  CHECK(coarse.error_estimate > 0.0);
  CHECK(diff < coarse.error_estimate);
}

TEST_CASE("precondition failures") {
  FlowProblem p = FlowProblem::for_model(constrained_params(ModelId::D1), {1, 1, 1, 1, 1}, 1.0);
  p.t_end = -1;
  CHECK_THROWS_AS(integrate(p), PreconditionViolation);
  p.t_end = 1;
  p.rel_tol = 0;
  CHECK_THROWS_AS(integrate(p), PreconditionViolation);

  ModelParams d1(ModelId::D1);
  d1.set(Param::alpha, 1.0);
  CHECK_THROWS_AS(integrate(FlowProblem::for_model(d1, {1, 1, 1, 1, 1}, 1.0)), DiagonalityViolation);

  StructureConstants bad(5);
  bad.set(0, 1, 2, 1.0);
  bad.set(1, 2, 1, 1.0);
  CHECK_THROWS_AS(integrate(FlowProblem::for_algebra(bad, {1, 1, 1, 1, 1}, 1.0)), PreconditionViolation);

  FlowProblem q = FlowProblem::for_algebra(build_model(constrained_params(ModelId::D5)), {1, 1, 1, 1, 1}, 1.0);
  q.source = RhsSource::tabulated;
  CHECK_THROWS_AS(integrate(q), PreconditionViolation);
}

TEST_CASE("tabulated source reproduces curvature where the tables agree") {
  FlowProblem p = FlowProblem::for_model(constrained_params(ModelId::D2), {0.7, 1.3, 0.9, 1.1, 1.8}, 100.0);
  const Trajectory a = integrate(p);
  p.source = RhsSource::tabulated;
  const Trajectory b = integrate(p);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < kDim; ++i) CHECK(rel(a.back().g[i], b.back().g[i]) < 1e-10);
}

TEST_CASE("positivity breach terminates the run") {
  // No catalog flow reaches zero in finite time, so put the floor (abs_tol) above A(0).
  FlowProblem p = FlowProblem::for_model(constrained_params(ModelId::D1), {1e-6, 1, 1, 1, 1}, 10.0);
  p.abs_tol = 1e-5;
  const Trajectory t = integrate(p);
  CHECK(t.termination == Termination::positivity_breach);
  CHECK_FALSE(t.message.empty());
}

TEST_CASE("resample_log") {
  Trajectory pw;
  pw.samples.push_back({0.0, {1, 1, 1, 1, 1}});
  for (int k = 0; k <= 96; ++k) {
    const double t = std::pow(10.0, k / 16.0);
    const double q = std::pow(t, 0.25);
    pw.samples.push_back({t, {q, q, q, q, q}});
  }
  const Trajectory r = resample_log(pw, 7);
  CHECK(r.samples.front().t == 0.0);
  CHECK(r.samples[1].t == 1.0);
  CHECK(r.back().t == pw.back().t);
  CHECK(r.samples.size() == 2 + 6 * 7);
  for (const auto& s : r.samples)
    if (s.t > 0) CHECK(rel(s.g[2], std::pow(s.t, 0.25)) < 1e-6);

  Trajectory c;
  for (double t : {0.5, 1.0, 3.0, 10.0}) c.samples.push_back({t, {2, 2, 2, 2, 2}});
  // Interpolation runs in log space, so constants survive up to round-off.
  for (const auto& s : resample_log(c, 10).samples)
    for (double x : s.g) CHECK(rel(x, 2.0) < 1e-15);

  Trajectory one;
  one.samples.push_back({1.0, {1, 1, 1, 1, 1}});
  CHECK_THROWS_AS(resample_log(one, 4), InvalidArgument);
  CHECK_THROWS_AS(resample_log(c, 0), InvalidArgument);
}
