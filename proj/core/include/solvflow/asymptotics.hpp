#pragma once

#include <array>
#include <optional>
#include <utility>

#include "solvflow/catalog.hpp"
#include "solvflow/flow.hpp"
#include "solvflow/rational.hpp"

namespace solvflow {

// B^2 = omega C^2 + k and D^2 = eps E^2 + ell along every D1 trajectory.
struct D1Constants {
  double omega, k, eps, ell;
};
// 1/A = (ell/2) D^3 + K D in D2 case1; equivalently A (D^3 + K1 D) = m.
struct D2Constants {
  double ell, K, m, K1, M;
};
// g_i = ell_i (t + c)^{p_i} for the self-similar D3 solution.
struct D3Constants {
  double c;
  Vec5 ell;
  std::array<Rational, 4> k;
};

class ClosedFormSolution {
 public:
  // Throws InvalidArgument for a model/case pair without closed-form data and
  // PreconditionViolation if lambda fails the case's algebraic requirement.
  // Supported: D1 case1/case2, D2 case1, D3 self_similar, D5 exact.
  ClosedFormSolution(ModelId model, CaseLabel c, const InitialData& lambda);

  ModelId model() const noexcept { return model_; }
  CaseLabel case_label() const noexcept { return case_; }
  const InitialData& lambda() const noexcept { return lambda_; }

  // Recomputed from lambda on every call.
  D1Constants d1() const;
  D2Constants d2() const;
  D3Constants d3() const;

  // Whether eval_closed_form gives explicit values (false for D1 case2 and
  // D2 case1, which are implicit relations).
  bool explicit_in_time() const noexcept;

 private:
  ModelId model_;
  CaseLabel case_;
  InitialData lambda_;
};

D1Constants d1_constants(const Vec5& lambda);
D2Constants d2_constants(const Vec5& lambda);

// Throws InvalidArgument for implicit-only solutions and for t < 0.
Vec5 eval_closed_form(const ClosedFormSolution& cf, double t);

struct PowerLawFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;  // g ~ exp(log_prefactor) t^exponent
  double r_squared = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  std::size_t n = 0;
};

// Least squares of log g_c against log t over samples with t in [t_lo, t_hi].
// Default window: the last two decades of the trajectory.
PowerLawFit fit_power_law(const Trajectory& traj, std::size_t component,
                          std::optional<std::pair<double, double>> window = std::nullopt);

// Largest relative residual over the trajectory of the exact relations of the
// given model and case. Throws PreconditionViolation if the first sample does
// not belong to the case, InvalidArgument if the case has no exact relation.
double residual_check(ModelId model, CaseLabel c, const Trajectory& traj);

// B^2 - omega C^2 - k and D^2 - eps E^2 - ell, largest relative residual.
double d1_quadratic_residual(const Trajectory& traj);

// The four D1 case2 antiderivative relations separately (B, C, D, E).
std::array<double, 4> d1_log_relation_residuals(const Trajectory& traj);

// Exact solution of the linear system for the D3 self-similar rates:
//   3k1 + k2 + k4 = 1, k1 + 3k2 + k3 = 1, k2 + 3k3 = 1, k1 + 3k4 = 1.
std::array<Rational, 4> d3_rate_system();
// Left-hand sides minus right-hand sides at k.
std::array<Rational, 4> d3_rate_residuals(const std::array<Rational, 4>& k);

}  // namespace solvflow
