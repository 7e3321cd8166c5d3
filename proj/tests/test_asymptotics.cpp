#include <doctest.h>

#include <cmath>

#include "solvflow/asymptotics.hpp"
#include "solvflow/errors.hpp"

using namespace solvflow;

namespace {

Trajectory run(ModelId id, const Vec5& l, double t_end) {
  return integrate(FlowProblem::for_model(constrained_params(id), l, t_end));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Composite Simpson rule with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("D5 closed form") {
  const ClosedFormSolution cf(ModelId::D5, CaseLabel::exact, InitialData({1, 1, 1, 1, 1}));
  CHECK(eval_closed_form(cf, 0.0) == Vec5{1, 1, 1, 1, 1});
  const Vec5 g = eval_closed_form(cf, 1.0);
  const double c = std::cbrt(4.0);
  CHECK(g[0] == doctest::Approx(1.0 / c));
  CHECK(g[1] == doctest::Approx(c));
  CHECK(g[2] == doctest::Approx(c));
  CHECK(g[3] == 1.0);
  CHECK(g[4] == 5.0);
  CHECK_THROWS_AS(eval_closed_form(cf, -1.0), InvalidArgument);
}

TEST_CASE("closed-form preconditions") {
  CHECK_THROWS_AS(ClosedFormSolution(ModelId::D1, CaseLabel::case1, InitialData({1, 1, 2, 1, 1})),
                  PreconditionViolation);
  CHECK_THROWS_AS(ClosedFormSolution(ModelId::D3, CaseLabel::self_similar, InitialData({1, 1, 1, 1, 1})),
                  PreconditionViolation);
  CHECK_THROWS_AS(ClosedFormSolution(ModelId::D11, CaseLabel::case1, InitialData({1, 1, 1, 1, 1})),
                  InvalidArgument);
  CHECK_THROWS_AS(ClosedFormSolution(ModelId::D5, CaseLabel::case1, InitialData({1, 1, 1, 1, 1})), InvalidArgument);
  const ClosedFormSolution d2(ModelId::D2, CaseLabel::case1, InitialData({1, 2, 4, 1, 1}));
  CHECK_FALSE(d2.explicit_in_time());
  CHECK_THROWS_AS(eval_closed_form(d2, 1.0), InvalidArgument);
}

TEST_CASE("integrator agrees with the closed forms on [0, 1e3]") {
  struct Item {
    ModelId id;
    CaseLabel c;
    Vec5 l;
  };
  for (const Item& it : {Item{ModelId::D5, CaseLabel::exact, {1.3, 0.7, 2.2, 0.9, 1.1}},
                         Item{ModelId::D5, CaseLabel::exact, {1, 1, 1, 1, 1}},
                         Item{ModelId::D1, CaseLabel::case1, {0.8, 1.2, 0.9, 1.5, 2.0}},
                         Item{ModelId::D1, CaseLabel::case1, {1, 1, 1, 1, 1}},
                         Item{ModelId::D3, CaseLabel::self_similar, {2.0 / 3.0, 1, 1, 1, 1}}}) {
    const Trajectory t = run(it.id, it.l, 1e3);
    const ClosedFormSolution cf(it.id, it.c, InitialData(it.l));
    double worst = 0.0;
    for (const auto& s : t.samples) {
      const Vec5 e = eval_closed_form(cf, s.t);
      for (std::size_t i = 0; i < kDim; ++i) worst = std::max(worst, rel(s.g[i], e[i]));
    }
    CHECK_MESSAGE(worst < 1e-7, to_string(it.id));
    if (it.id != ModelId::D1) CHECK(residual_check(it.id, it.c, t) == worst);
  }
}

TEST_CASE("D3 self-similar constants") {
  const ClosedFormSolution cf(ModelId::D3, CaseLabel::self_similar, InitialData({2.0 / 3.0, 1, 1, 1, 1}));
  const auto d = cf.d3();
  CHECK(d.c == doctest::Approx(3.0 / 11.0));
  CHECK(d.k == std::array<Rational, 4>{Rational(2, 11), Rational(2, 11), Rational(3, 11), Rational(3, 11)});
}

TEST_CASE("D3 rate system") {
  const auto k = d3_rate_system();
  CHECK(k == std::array<Rational, 4>{Rational(2, 11), Rational(2, 11), Rational(3, 11), Rational(3, 11)});
  for (const auto& r : d3_rate_residuals(k)) CHECK(r == Rational(0));
  const auto off = d3_rate_residuals({Rational(1, 5), Rational(2, 11), Rational(3, 11), Rational(3, 11)});
  CHECK(off[0] != Rational(0));
}

TEST_CASE("power-law fits") {
  Trajectory pw;
  for (int k = 0; k <= 64; ++k) {
    const double t = std::pow(10.0, 4.0 + k / 32.0);
    const double q = 3.0 * std::pow(t, 0.25);
    pw.samples.push_back({t, {q, q, q, q, q}});
  }
  const PowerLawFit f = fit_power_law(pw, 0);
  CHECK(f.exponent == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(f.r_squared > 1 - 1e-12);
  CHECK(std::exp(f.log_prefactor) == doctest::Approx(3.0));
  CHECK(f.t_lo == doctest::Approx(1e4));
  CHECK(f.n == 65);
  CHECK_THROWS_AS(fit_power_law(pw, 5), InvalidArgument);
  CHECK_THROWS_AS(fit_power_law(pw, 0, std::pair{1e4, 1e4 * 1.01}), InvalidArgument);
  CHECK_THROWS_AS(fit_power_law(pw, 0, std::pair{1e4, 1e7}), InvalidArgument);

  const Trajectory d3 = run(ModelId::D3, {1, 1, 1, 1, 1}, 1e6);
  CHECK(fit_power_law(d3, 0, std::pair{1e4, 1e6}).exponent == doctest::Approx(-4.0 / 11.0).epsilon(0.01 / (4.0 / 11.0)));
  const Trajectory d2 = run(ModelId::D2, {1, 1, 1, 1, 1}, 1e6);
  CHECK(std::abs(fit_power_law(d2, 4, std::pair{1e4, 1e6}).exponent - 4.0 / 7.0) < 0.01);
}

TEST_CASE("fitted exponents are orthogonal to the invariants") {
  for (ModelId id : {ModelId::D1, ModelId::D2, ModelId::D3, ModelId::D5}) {
    const Trajectory t = run(id, {0.7, 1.3, 0.9, 1.1, 1.8}, 1e6);
    Vec5 p;
    for (std::size_t i = 0; i < kDim; ++i) p[i] = fit_power_law(t, i, std::pair{1e4, 1e6}).exponent;
    for (const auto& m : model_invariants(id).monomials) {
      double dot = 0.0;
      for (std::size_t i = 0; i < kDim; ++i) dot += m[i] * p[i];
      CHECK(std::abs(dot) < 0.02);
    }
  }
}

TEST_CASE("D1 quadratic relations") {
  Trajectory c;
  for (double t : {0.0, 1.0, 5.0}) c.samples.push_back({t, {0.7, 1.3, 0.9, 1.1, 1.8}});
  CHECK(d1_quadratic_residual(c) < 1e-15);
  for (const Vec5& l : {Vec5{0.7, 1.3, 0.9, 1.1, 1.8}, Vec5{1.9, 0.6, 1.4, 0.8, 0.5}}) {
    const Trajectory t = run(ModelId::D1, l, 1e4);
    CHECK(d1_quadratic_residual(t) < 1e-8);
    CHECK(residual_check(ModelId::D1, CaseLabel::case2, t) < 1e-6);
  }
}

TEST_CASE("D1 case2 B relation by quadrature") {
  // int_{lambda2}^{B(t)} x^2 sqrt(x^2 - k) dx = r_B t with k = (l2/l4)(l2 l4 - l3 l5).
  const Vec5 l{0.7, 1.3, 0.9, 1.1, 1.8};
  const Trajectory t = run(ModelId::D1, l, 100.0);
  const double k = (l[1] / l[3]) * (l[1] * l[3] - l[2] * l[4]);
  const double omega = l[1] * l[4] / (l[2] * l[3]);
  const double rate = l[0] * l[1] * l[1] * l[2] * std::sqrt(omega) / l[3];
  const auto integrand = [k](double x) { return x * x * std::sqrt(x * x - k); };
  for (const auto& s : t.samples) {
    if (s.t < 1.0) continue;
    CHECK(simpson(integrand, l[1], s.g[1]) == doctest::Approx(rate * s.t).epsilon(1e-8));
  }
  CHECK(d1_log_relation_residuals(t)[0] < 1e-8);
}

TEST_CASE("D2 Bernoulli relation") {
  const Trajectory t = run(ModelId::D2, {1, 2, 4, 1, 1}, 1e4);
  CHECK(residual_check(ModelId::D2, CaseLabel::case1, t) < 1e-8);
  const auto d = d2_constants({1, 2, 4, 1, 1});
  CHECK(d.ell == doctest::Approx(2.0));  // lambda2 / (lambda1^2 lambda4^2 lambda5)
  CHECK(1.0 == doctest::Approx(0.5 * d.ell + d.K));
  CHECK_THROWS_AS(residual_check(ModelId::D2, CaseLabel::case2, t), PreconditionViolation);
}

TEST_CASE("case mismatch is rejected") {
  const Trajectory t = run(ModelId::D1, {0.7, 1.3, 0.9, 1.1, 1.8}, 10.0);
  CHECK_THROWS_AS(residual_check(ModelId::D1, CaseLabel::case1, t), PreconditionViolation);
  CHECK_THROWS_AS(residual_check(ModelId::D1, CaseLabel::exact, t), InvalidArgument);
}
