#include "solvflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pchip.hpp"
#include "solvflow/dopri5.hpp"
#include "solvflow/errors.hpp"

namespace solvflow {

std::string_view to_string(RhsSource s) {
  return s == RhsSource::curvature ? "curvature" : "tabulated";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end: return "reached_t_end";
    case Termination::positivity_breach: return "positivity_breach";
    case Termination::diagonality_breach: return "diagonality_breach";
    case Termination::step_failure: return "step_failure";
  }
  return "?";
}

std::optional<RhsSource> parse_rhs_source(std::string_view s) {
  if (s == "curvature") return RhsSource::curvature;
  if (s == "tabulated") return RhsSource::tabulated;
  return std::nullopt;
}

std::optional<Termination> parse_termination(std::string_view s) {
  for (auto t : {Termination::reached_t_end, Termination::positivity_breach,
                 Termination::diagonality_breach, Termination::step_failure})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

FlowProblem FlowProblem::for_model(const ModelParams& params, const Vec5& lambda, double t_end) {
  FlowProblem p;
  p.algebra = build_model(params);
  p.params = params;
  p.initial = InitialData(lambda);
  p.t_end = t_end;
  p.monitored = model_invariants(params.model()).monomials;
  return p;
}

FlowProblem FlowProblem::for_algebra(const StructureConstants& sc, const Vec5& lambda, double t_end) {
  FlowProblem p;
  p.algebra = sc;
  p.initial = InitialData(lambda);
  p.t_end = t_end;
  return p;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) t.push_back(s.t);
  return t;
}

std::vector<double> Trajectory::component(std::size_t i) const {
  if (i >= kDim) throw InvalidArgument("component index out of range");
  std::vector<double> v;
  v.reserve(samples.size());
  for (const auto& s : samples) v.push_back(s.g[i]);
  return v;
}

namespace {

void validate(const FlowProblem& p) {
  if (!(p.t_end > 0.0) || !std::isfinite(p.t_end)) throw PreconditionViolation("t_end must be positive");
  if (!(p.rel_tol > 0.0 && p.rel_tol < 1.0)) throw PreconditionViolation("rel_tol must lie in (0, 1)");
  if (!(p.abs_tol > 0.0 && p.abs_tol < 1.0)) throw PreconditionViolation("abs_tol must lie in (0, 1)");
  if (!(p.offdiag_tol > 0.0)) throw PreconditionViolation("offdiag_tol must be positive");
  if (p.per_decade < 1 || p.linear_samples < 1)
    throw PreconditionViolation("sample counts must be positive");
  if (p.algebra.dim() != kDim) throw DimensionMismatch("flow needs five-dimensional structure constants");
  if (const double r = jacobi_residual(p.algebra); r >= kIdentityTolerance)
    throw PreconditionViolation("structure constants violate the Jacobi identity (residual " +
                                std::to_string(r) + ")");
  if (p.source == RhsSource::tabulated) {
    if (!p.params) throw PreconditionViolation("the tabulated system needs a catalog model");
    const ModelParams c = constrained_params(p.params->model(), p.params->epsilon());
    if (build_model(*p.params).max_abs_difference(build_model(c)) != 0.0)
      throw PreconditionViolation("the tabulated system is only defined at constrained parameters");
  }
}

std::vector<double> output_times(const FlowProblem& p) {
  std::vector<double> out;
  for (int k = 1; k <= p.linear_samples; ++k) {
    const double t = static_cast<double>(k) / p.linear_samples;
    if (t < p.t_end) out.push_back(t);
  }
  if (p.t_end > 1.0) {
    for (int j = 1;; ++j) {
      const double t = std::pow(10.0, static_cast<double>(j) / p.per_decade);
      if (!(t < p.t_end)) break;
      out.push_back(t);
    }
  }
  out.push_back(p.t_end);
  return out;
}

struct Rhs {
  const FlowProblem& p;
  bool diagonality_breach = false;
  std::string breach_message;

  bool operator()(double, const Vec5& y, Vec5& dy) {
    for (double v : y)
      if (!(v > 0.0)) return false;
    if (p.source == RhsSource::tabulated) {
      dy = tabulated_flow_system(p.params->model(), y);
      return true;
    }
    try {
      const FlowRhs r = flow_rhs(p.algebra, DiagonalMetric(y), p.offdiag_tol);
      std::copy(r.begin(), r.end(), dy.begin());
      return true;
    } catch (const DiagonalityViolation& e) {
      diagonality_breach = true;
      breach_message = e.what();
      return false;
    } catch (const NonpositiveMetric&) {
      return false;
    }
  }
};

}  // namespace

Trajectory integrate(const FlowProblem& p) {
  validate(p);

  const Vec5& lambda = p.initial.lambda();
  std::vector<double> inv0;
  for (const auto& m : p.monitored) inv0.push_back(m.evaluate(lambda));

  auto make_sample = [&](double t, const Vec5& g) {
    Sample s;
    s.t = t;
    s.g = g;
    for (std::size_t k = 0; k < p.monitored.size(); ++k)
      s.max_drift = std::max(s.max_drift, std::abs(p.monitored[k].evaluate(g) - inv0[k]) / std::abs(inv0[k]));
    s.max_offdiag = ricci_tensor(p.algebra, DiagonalMetric(g)).max_offdiagonal();
    return s;
  };

  Trajectory traj;
  traj.samples.push_back(make_sample(0.0, lambda));

  if (p.source == RhsSource::curvature) {
    // Surfaces unconstrained parameters immediately.
    (void)flow_rhs(p.algebra, DiagonalMetric(lambda), p.offdiag_tol);
  }

  DormandPrince5<kDim>::Options opt;
  opt.rel_tol = p.rel_tol;
  opt.abs_tol = p.abs_tol;
  DormandPrince5<kDim> stepper(opt);
  Rhs rhs{p, false, {}};
  if (!stepper.start(rhs, 0.0, lambda)) {
    traj.termination = Termination::step_failure;
    traj.message = "vector field undefined at the initial metric";
    return traj;
  }

  const double floor = std::max(p.abs_tol, 1e-13);
  const std::vector<double> outs = output_times(p);
  std::size_t next = 0;

  auto finish = [&](Termination why, std::string msg) {
    traj.termination = why;
    traj.message = std::move(msg);
  };

  while (true) {
    const double t = stepper.t();
    double h = std::min(stepper.suggested_step(), 0.1 * (t + 1.0));
    bool last = false;
    if (t + 1.0001 * h >= p.t_end) {
      h = p.t_end - t;
      last = true;
    }
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t);
    if (!(h > h_min)) {
      finish(Termination::step_failure, "step size underflow at t = " + std::to_string(t));
      break;
    }
    const bool accepted = stepper.attempt(rhs, h);
    if (rhs.diagonality_breach) {
      finish(Termination::diagonality_breach, rhs.breach_message);
      break;
    }
    if (!accepted) continue;
    traj.error_estimate += stepper.last_local_error();

    const Vec5& y = stepper.y();
    const double t_new = last ? p.t_end : stepper.t();
    bool breach = false;
    while (next < outs.size() && (outs[next] <= t_new || (last && next + 1 == outs.size()))) {
      const double tau = outs[next];
      const Vec5 g = (tau >= t_new) ? y : stepper.dense(tau);
      if (*std::min_element(g.begin(), g.end()) <= floor) {
        breach = true;
        break;
      }
      traj.samples.push_back(make_sample(tau, g));
      ++next;
    }
    if (breach || *std::min_element(y.begin(), y.end()) <= floor) {
      finish(Termination::positivity_breach,
             "metric coefficient fell below " + std::to_string(floor) + " near t = " + std::to_string(t_new));
      break;
    }
    if (last) {
      finish(Termination::reached_t_end, "");
      break;
    }
  }
  traj.steps_accepted = stepper.accepted();
  traj.steps_rejected = stepper.rejected();
  return traj;
}

Trajectory resample_log(const Trajectory& traj, int per_decade) {
  if (per_decade <= 0) throw InvalidArgument("per_decade must be positive");
  if (traj.samples.size() < 2) throw InvalidArgument("resampling needs at least two samples");

  std::vector<const Sample*> pos;
  for (const auto& s : traj.samples)
    if (s.t > 0.0) pos.push_back(&s);
  if (pos.size() < 2) throw InvalidArgument("resampling needs at least two samples at positive times");

  std::vector<double> lt(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) lt[i] = std::log(pos[i]->t);
  std::vector<detail::Pchip> curves;
  for (std::size_t c = 0; c < kDim; ++c) {
    std::vector<double> lg(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) lg[i] = std::log(pos[i]->g[c]);
    curves.emplace_back(lt, std::move(lg));
  }

  Trajectory out;
  out.termination = traj.termination;
  out.message = traj.message;
  out.error_estimate = traj.error_estimate;
  out.steps_accepted = traj.steps_accepted;
  out.steps_rejected = traj.steps_rejected;
  if (traj.samples.front().t <= 0.0) out.samples.push_back(traj.samples.front());

  const double t0 = pos.front()->t, t1 = pos.back()->t;
  const double decades = std::log10(t1 / t0);
  const int n = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
  for (int k = 0; k <= n; ++k) {
    double t = (k == 0) ? t0 : (k == n ? t1 : t0 * std::pow(10.0, static_cast<double>(k) / per_decade));
    if (k > 0 && k < n && t >= t1) continue;
    const double x = std::log(t);
    Sample s;
    s.t = t;
    for (std::size_t c = 0; c < kDim; ++c) s.g[c] = std::exp(curves[c](x));
    if (k == 0) s.g = pos.front()->g;
    if (k == n) s.g = pos.back()->g;
    // Diagnostics from the bracketing original samples.
    auto it = std::lower_bound(lt.begin(), lt.end(), x);
    const std::size_t hi = std::min<std::size_t>(it - lt.begin(), pos.size() - 1);
    const std::size_t lo = hi > 0 ? hi - 1 : 0;
    s.max_drift = std::max(pos[lo]->max_drift, pos[hi]->max_drift);
    s.max_offdiag = std::max(pos[lo]->max_offdiag, pos[hi]->max_offdiag);
    out.samples.push_back(s);
  }
  return out;
}

}  // namespace solvflow
