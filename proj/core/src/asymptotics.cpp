#include "solvflow/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solvflow/errors.hpp"

namespace solvflow {

namespace {

bool rel_equal(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// Antiderivative of x^2 sqrt(x^2 - k).
double log_primitive_b(double x, double k) {
  const double r = std::sqrt(x * x - k);
  return 0.125 * (r * (2 * x * x * x - k * x) - k * k * std::log(x + r));
}

// Antiderivative of x^2 sqrt(w x^2 + k).
double log_primitive_c(double x, double w, double k) {
  const double r = std::sqrt(w * w * x * x + w * k);
  return (r * (2 * w * x * x * x + k * x) - k * k * std::log(w * x + r)) / (8.0 * std::pow(w, 1.5));
}

void require_case(ModelId model, CaseLabel c) {
  const auto cases = model_cases(model);
  if (std::find(cases.begin(), cases.end(), c) == cases.end())
    throw InvalidArgument("case '" + std::string(to_string(c)) + "' is not defined for model " +
                          std::string(to_string(model)));
}

}  // namespace

D1Constants d1_constants(const Vec5& l) {
  const double gap = l[1] * l[3] - l[2] * l[4];
  return {l[1] * l[4] / (l[2] * l[3]), (l[1] / l[3]) * gap, l[2] * l[3] / (l[1] * l[4]), (l[3] / l[1]) * gap};
}

D2Constants d2_constants(const Vec5& l) {
  const double cube = std::cbrt(l[0] * l[1] * l[2]);
  const double ell = l[2] / (l[0] * l[3] * l[3] * l[4] * cube);
  const double K = (1.0 / l[0] - 0.5 * ell * l[3] * l[3] * l[3]) / l[3];
  const double m = 2.0 / ell;
  return {ell, K, m, 2.0 * K / ell, m * m / (cube * cube)};
}

ClosedFormSolution::ClosedFormSolution(ModelId model, CaseLabel c, const InitialData& lambda)
    : model_(model), case_(c), lambda_(lambda) {
  require_case(model, c);
  const Vec5& l = lambda.lambda();
  switch (model) {
    case ModelId::D1:
      if (c == CaseLabel::case1 && !rel_equal(l[1] * l[3], l[2] * l[4]))
        throw PreconditionViolation("D1 case1 needs lambda2 lambda4 = lambda3 lambda5");
      break;
    case ModelId::D2:
      if (c != CaseLabel::case1) throw InvalidArgument("no closed form for D2 case2");
      if (!rel_equal(l[1] * l[1], l[0] * l[2]))
        throw PreconditionViolation("D2 case1 needs lambda2^2 = lambda1 lambda3");
      break;
    case ModelId::D3:
      if (c != CaseLabel::self_similar) throw InvalidArgument("no closed form for generic D3 data");
      if (!rel_equal(l[1] * l[4], l[2] * l[3]) || !rel_equal(l[1] * l[3], l[2] * l[2]) ||
          !rel_equal(3 * l[0] * l[4], 2 * l[2] * l[2]))
        throw PreconditionViolation(
            "D3 self-similar data needs lambda2 lambda5 = lambda3 lambda4, lambda2 lambda4 = lambda3^2, "
            "3 lambda1 lambda5 = 2 lambda3^2");
      break;
    case ModelId::D5: break;
    case ModelId::D11: throw InvalidArgument("no closed form for D11");
  }
}

D1Constants ClosedFormSolution::d1() const {
  if (model_ != ModelId::D1) throw InvalidArgument("not a D1 solution");
  return d1_constants(lambda_.lambda());
}

D2Constants ClosedFormSolution::d2() const {
  if (model_ != ModelId::D2) throw InvalidArgument("not a D2 solution");
  return d2_constants(lambda_.lambda());
}

D3Constants ClosedFormSolution::d3() const {
  if (model_ != ModelId::D3) throw InvalidArgument("not a D3 solution");
  const auto k = d3_rate_system();
  const Vec5& l = lambda_.lambda();
  // x = A/(BE) = k1/(t + c) at t = 0
  const double c = k[0].value() * l[1] * l[4] / l[0];
  const auto p = model_asymptotics(ModelId::D3, CaseLabel::self_similar);
  D3Constants out{c, {}, k};
  for (std::size_t i = 0; i < kDim; ++i) out.ell[i] = l[i] * std::pow(c, -p[i].value());
  return out;
}

bool ClosedFormSolution::explicit_in_time() const noexcept {
  return !(model_ == ModelId::D2 || (model_ == ModelId::D1 && case_ == CaseLabel::case2));
}

Vec5 eval_closed_form(const ClosedFormSolution& cf, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("closed forms are evaluated at t >= 0");
  if (!cf.explicit_in_time())
    throw InvalidArgument("this case only has implicit relations; use residual_check");
  const Vec5& l = cf.lambda().lambda();
  switch (cf.model()) {
    case ModelId::D1: {
      const auto d = cf.d1();
      const double so = std::sqrt(d.omega), se = std::sqrt(d.eps);
      const double fb = 1 + 4 * l[0] * l[2] * so * t / (l[1] * l[1] * l[3]);
      const double fc = 1 + 4 * l[0] * l[1] * t / (l[2] * l[2] * l[4] * so);
      const double fd = 1 + 4 * l[0] * l[4] * se * t / (l[1] * l[3] * l[3]);
      const double fe = 1 + 4 * l[0] * l[3] * t / (l[2] * l[4] * l[4] * se);
      return {l[0] * std::pow(fb, -0.25) * std::pow(fc, -0.25), l[1] * std::pow(fb, 0.25),
              l[2] * std::pow(fc, 0.25), l[3] * std::pow(fd, 0.25), l[4] * std::pow(fe, 0.25)};
    }
    case ModelId::D3: {
      const auto d = cf.d3();
      const auto p = model_asymptotics(ModelId::D3, CaseLabel::self_similar);
      Vec5 g;
      for (std::size_t i = 0; i < kDim; ++i) g[i] = l[i] * std::pow(1.0 + t / d.c, p[i].value());
      return g;
    }
    case ModelId::D5: {
      const double s = 1 + 3 * l[0] * t / (l[1] * l[2]);
      const double r = std::cbrt(s);
      return {l[0] / r, l[1] * r, l[2] * r, l[3], 4 * t + l[4]};
    }
    default: break;
  }
  throw InvalidArgument("no explicit closed form");
}

PowerLawFit fit_power_law(const Trajectory& traj, std::size_t component,
                          std::optional<std::pair<double, double>> window) {
  if (component >= kDim) throw InvalidArgument("component index out of range");
  if (traj.samples.empty()) throw InvalidArgument("empty trajectory");
  const double t_last = traj.back().t;
  const auto [lo, hi] = window.value_or(std::pair{std::max(1.0, t_last / 100.0), t_last});
  if (!(lo >= 1.0)) throw InvalidArgument("fit window must start at t >= 1");
  if (!(hi > lo)) throw InvalidArgument("fit window must have t_lo < t_hi");
  if (hi > t_last * (1 + 1e-12)) throw InvalidArgument("fit window extends beyond the trajectory");

  std::vector<double> x, y;
  for (const auto& s : traj.samples)
    if (s.t >= lo * (1 - 1e-12) && s.t <= hi * (1 + 1e-12)) {
      x.push_back(std::log(s.t));
      y.push_back(std::log(s.g[component]));
    }
  if (x.size() < 8)
    throw InvalidArgument("fit window holds " + std::to_string(x.size()) + " samples, at least 8 needed");

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  PowerLawFit f;
  f.exponent = sxy / sxx;
  f.log_prefactor = my - f.exponent * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.log_prefactor + f.exponent * x[i]);
    ssr += r * r;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  f.t_lo = lo;
  f.t_hi = hi;
  f.n = x.size();
  return f;
}

double d1_quadratic_residual(const Trajectory& traj) {
  if (traj.samples.empty()) throw InvalidArgument("empty trajectory");
  const auto d = d1_constants(traj.front().g);
  double worst = 0.0;
  for (const auto& s : traj.samples) {
    const auto& g = s.g;
    worst = std::max(worst, rel_diff(g[1] * g[1], d.omega * g[2] * g[2] + d.k));
    worst = std::max(worst, rel_diff(g[3] * g[3], d.eps * g[4] * g[4] + d.ell));
  }
  return worst;
}

std::array<double, 4> d1_log_relation_residuals(const Trajectory& traj) {
  if (traj.samples.empty()) throw InvalidArgument("empty trajectory");
  const Vec5& l = traj.front().g;
  const auto d = d1_constants(l);
  const double rb = l[0] * l[1] * l[1] * l[2] * std::sqrt(d.omega) / l[3];
  const double rc = l[0] * l[1] * l[2] * l[2] / l[4];
  const double rd = l[0] * l[3] * l[3] * l[4] * std::sqrt(d.eps) / l[1];
  const double re = l[0] * l[3] * l[4] * l[4] / l[2];
  const std::array<double, 4> f0{log_primitive_b(l[1], d.k), log_primitive_c(l[2], d.omega, d.k),
                                 log_primitive_b(l[3], d.ell), log_primitive_c(l[4], d.eps, d.ell)};
  const std::array<double, 4> rate{rb, rc, rd, re};
  std::array<double, 4> worst{};
  for (const auto& s : traj.samples) {
    const std::array<double, 4> f{log_primitive_b(s.g[1], d.k), log_primitive_c(s.g[2], d.omega, d.k),
                                  log_primitive_b(s.g[3], d.ell), log_primitive_c(s.g[4], d.eps, d.ell)};
    for (std::size_t i = 0; i < 4; ++i) {
      const double rhs = f0[i] + rate[i] * s.t;
      const double scale = std::max({std::abs(f[i]), std::abs(rhs), std::abs(rate[i] * s.t)});
      if (scale > 0.0) worst[i] = std::max(worst[i], std::abs(f[i] - rhs) / scale);
    }
  }
  return worst;
}

double residual_check(ModelId model, CaseLabel c, const Trajectory& traj) {
  require_case(model, c);
  if (traj.samples.empty()) throw InvalidArgument("empty trajectory");
  if (traj.front().t != 0.0) throw PreconditionViolation("trajectory must start at t = 0");
  const InitialData init(traj.front().g);
  if (classify_case(model, init) != c)
    throw PreconditionViolation("case/trajectory mismatch: initial data belongs to " +
                                std::string(to_string(classify_case(model, init))));
  const Vec5& l = init.lambda();
  double worst = 0.0;
  switch (model) {
    case ModelId::D1: {
      worst = d1_quadratic_residual(traj);
      if (c == CaseLabel::case2)
        for (double r : d1_log_relation_residuals(traj)) worst = std::max(worst, r);
      return worst;
    }
    case ModelId::D2: {
      if (c != CaseLabel::case1) throw InvalidArgument("D2 case2 has no exact relation beyond the invariants");
      const auto d = d2_constants(l);
      for (const auto& s : traj.samples) {
        const auto& g = s.g;
        worst = std::max(worst, rel_diff(1.0 / g[0], 0.5 * d.ell * g[3] * g[3] * g[3] + d.K * g[3]));
      }
      return worst;
    }
    case ModelId::D3:
    case ModelId::D5: {
      if (model == ModelId::D3 && c != CaseLabel::self_similar)
        throw InvalidArgument("generic D3 data has no exact relation beyond the invariant");
      const ClosedFormSolution cf(model, c, init);
      for (const auto& s : traj.samples) {
        const Vec5 e = eval_closed_form(cf, s.t);
        for (std::size_t i = 0; i < kDim; ++i) worst = std::max(worst, rel_diff(s.g[i], e[i]));
      }
      return worst;
    }
    case ModelId::D11: {
      if (c == CaseLabel::case1) {
        for (const auto& s : traj.samples) worst = std::max(worst, rel_diff(s.g[1], s.g[2]));
        return worst;
      }
      for (const auto& sp : model_invariants(ModelId::D11).special)
        if (sp.only_case == CaseLabel::case2) {
          const double i0 = sp.evaluate(l);
          for (const auto& s : traj.samples) worst = std::max(worst, std::abs(sp.evaluate(s.g) - i0) / std::abs(i0));
        }
      return worst;
    }
  }
  return worst;
}

std::array<Rational, 4> d3_rate_system() {
  // Augmented matrix, Gauss-Jordan in exact arithmetic.
  std::array<std::array<Rational, 5>, 4> m{{{3, 1, 0, 1, 1}, {1, 3, 1, 0, 1}, {0, 1, 3, 0, 1}, {1, 0, 0, 3, 1}}};
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    while (m[piv][col] == Rational(0)) ++piv;
    std::swap(m[piv], m[col]);
    const Rational p = m[col][col];
    for (auto& x : m[col]) x = x / p;
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col || m[r][col] == Rational(0)) continue;
      const Rational f = m[r][col];
      for (std::size_t k = 0; k < 5; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return {m[0][4], m[1][4], m[2][4], m[3][4]};
}

std::array<Rational, 4> d3_rate_residuals(const std::array<Rational, 4>& k) {
  const Rational three(3);
  return {three * k[0] + k[1] + k[3] - 1, k[0] + three * k[1] + k[2] - 1, k[1] + three * k[2] - 1,
          k[0] + three * k[3] - 1};
}

}  // namespace solvflow
