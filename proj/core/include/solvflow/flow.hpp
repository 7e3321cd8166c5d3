#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solvflow/catalog.hpp"
#include "solvflow/curvature.hpp"
#include "solvflow/lie.hpp"
#include "solvflow/monomial.hpp"
#include "solvflow/types.hpp"

namespace solvflow {

enum class RhsSource {
  curvature,  // -2 g_i Ric(Yhat_i, Yhat_i) from the structure constants
  tabulated,  // the model's tabulated ODE system
};

enum class Termination { reached_t_end, positivity_breach, diagonality_breach, step_failure };

std::string_view to_string(RhsSource s);
std::string_view to_string(Termination t);
std::optional<RhsSource> parse_rhs_source(std::string_view s);
std::optional<Termination> parse_termination(std::string_view s);

struct FlowProblem {
  StructureConstants algebra{5};
  std::optional<ModelParams> params;  // set when algebra comes from the catalog
  InitialData initial{Vec5{1, 1, 1, 1, 1}};
  double t_end = 1.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double offdiag_tol = kDefaultOffdiagTol;
  RhsSource source = RhsSource::curvature;
  std::vector<InvariantMonomial> monitored;
  int per_decade = 64;      // log-spaced samples per decade after t = 1
  int linear_samples = 16;  // uniform samples on [0, 1]

  // Catalog model with its monomial invariants monitored.
  static FlowProblem for_model(const ModelParams& params, const Vec5& lambda, double t_end);
  // Arbitrary structure constants, nothing monitored.
  static FlowProblem for_algebra(const StructureConstants& sc, const Vec5& lambda, double t_end);

  std::optional<ModelId> model() const {
    return params ? std::optional<ModelId>(params->model()) : std::nullopt;
  }
};

struct Sample {
  double t = 0.0;
  Vec5 g{};
  double max_drift = 0.0;    // largest relative drift of the monitored invariants
  double max_offdiag = 0.0;  // largest off-diagonal Ricci entry
};

struct Trajectory {
  std::vector<Sample> samples;
  Termination termination = Termination::reached_t_end;
  std::string message;
  // Sum over accepted steps of the embedded local error estimate, relative
  // to the solution size. A rough upper bound on the global error.
  double error_estimate = 0.0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;

  const Sample& front() const { return samples.front(); }
  const Sample& back() const { return samples.back(); }
  std::vector<double> times() const;
  std::vector<double> component(std::size_t i) const;
};

// Integrates dg/dt = -2 g Ric (or the tabulated system) from t = 0 to t_end.
// Throws PreconditionViolation for invalid problems and DiagonalityViolation
// if the diagonal ansatz already fails at t = 0. Later breaches end the
// trajectory early with the corresponding termination reason.
Trajectory integrate(const FlowProblem& p);

// Geometrically spaced resampling between the first positive time and the
// last sample, monotone cubic in (log t, log g). A t = 0 sample is kept.
Trajectory resample_log(const Trajectory& traj, int per_decade);

}  // namespace solvflow
