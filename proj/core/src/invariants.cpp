#include "solvflow/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "solvflow/curvature.hpp"
#include "solvflow/errors.hpp"

namespace solvflow {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Rows of dlog g_i / dt at random metrics.
std::vector<Vec5> log_derivatives(const StructureConstants& sc, const DetectionOptions& opt) {
  if (opt.points < 1) throw InvalidArgument("detection needs at least one test point");
  if (sc.dim() != kDim) throw DimensionMismatch("detection needs five-dimensional structure constants");
  std::mt19937_64 rng(opt.seed);
  std::vector<Vec5> rows;
  rows.reserve(opt.points);
  for (int p = 0; p < opt.points; ++p) {
    Vec5 g;
    for (double& x : g) x = std::pow(10.0, 2.0 * uniform01(rng) - 1.0);
    const FlowRhs dg = flow_rhs(sc, DiagonalMetric(g));
    Vec5 row;
    for (std::size_t i = 0; i < kDim; ++i) row[i] = dg[i] / g[i];
    rows.push_back(row);
  }
  return rows;
}

bool vanishes(const std::vector<Vec5>& rows, const Exponents& e, double threshold) {
  for (const Vec5& l : rows) {
    double s = 0.0, a = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
      const double term = e[i] * l[i];
      s += term;
      a += std::abs(term);
    }
    if (std::abs(s) > threshold * a) return false;
  }
  return true;
}

bool canonical_primitive(const Exponents& e) {
  int g = 0;
  int first = 0;
  for (int x : e) {
    if (first == 0) first = x;
    g = std::gcd(g, std::abs(x));
  }
  return g == 1 && first > 0;
}

}  // namespace

std::vector<InvariantMonomial> detect_monomials(const StructureConstants& sc, int max_exp,
                                                const DetectionOptions& opt) {
  if (max_exp < 1) throw InvalidArgument("max_exp must be positive");
  const std::vector<Vec5> rows = log_derivatives(sc, opt);
  std::vector<InvariantMonomial> found;
  Exponents e{};
  const int width = 2 * max_exp + 1;
  const long total = static_cast<long>(std::pow(width, kDim));
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (std::size_t i = kDim; i-- > 0;) {
      e[i] = static_cast<int>(c % width) - max_exp;
      c /= width;
    }
    if (!canonical_primitive(e)) continue;
    if (vanishes(rows, e, opt.threshold)) found.emplace_back(e);
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<InvariantMonomial> detect_monomials(const ModelParams& params, int max_exp,
                                                const DetectionOptions& opt) {
  return detect_monomials(build_model(params), max_exp, opt);
}

bool is_conserved(const StructureConstants& sc, const InvariantMonomial& m, const DetectionOptions& opt) {
  return vanishes(log_derivatives(sc, opt), m.exponents(), opt.threshold);
}

std::vector<Exponents> lattice_basis(std::span<const InvariantMonomial> vectors) {
  std::vector<Exponents> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(v.exponents());
  return lattice_basis(rows);
}

std::vector<Exponents> lattice_basis(std::span<const Exponents> vectors) {
  std::vector<std::array<long long, kDim>> m;
  for (const auto& v : vectors) {
    std::array<long long, kDim> r;
    for (std::size_t i = 0; i < kDim; ++i) r[i] = v[i];
    m.push_back(r);
  }
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < kDim && pivot_row < m.size(); ++col) {
    // Euclid on column `col` among rows pivot_row..end.
    while (true) {
      std::size_t best = m.size();
      for (std::size_t r = pivot_row; r < m.size(); ++r)
        if (m[r][col] != 0 && (best == m.size() || std::llabs(m[r][col]) < std::llabs(m[best][col])))
          best = r;
      if (best == m.size()) break;
      std::swap(m[pivot_row], m[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        const long long q = m[r][col] / m[pivot_row][col];
        for (std::size_t k = 0; k < kDim; ++k) m[r][k] -= q * m[pivot_row][k];
        if (m[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (pivot_row >= m.size() || m[pivot_row][col] == 0) continue;
    if (m[pivot_row][col] < 0)
      for (auto& x : m[pivot_row]) x = -x;
    const long long p = m[pivot_row][col];
    for (std::size_t r = 0; r < pivot_row; ++r) {
      long long q = m[r][col] / p;
      if (m[r][col] - q * p < 0) --q;  // floor division
      for (std::size_t k = 0; k < kDim; ++k) m[r][k] -= q * m[pivot_row][k];
    }
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  std::vector<Exponents> out;
  for (std::size_t r = 0; r < pivot_row; ++r) {
    Exponents e;
    for (std::size_t k = 0; k < kDim; ++k) e[k] = static_cast<int>(m[r][k]);
    out.push_back(e);
  }
  return out;
}

bool lattice_contains(std::span<const Exponents> hnf, const Exponents& v_in) {
  std::array<long long, kDim> v;
  for (std::size_t i = 0; i < kDim; ++i) v[i] = v_in[i];
  std::size_t col = 0;
  for (const auto& row : hnf) {
    std::size_t pc = 0;
    while (pc < kDim && row[pc] == 0) ++pc;
    if (pc == kDim) continue;
    for (; col < pc; ++col)
      if (v[col] != 0) return false;
    if (v[pc] % row[pc] != 0) return false;
    const long long q = v[pc] / row[pc];
    for (std::size_t k = 0; k < kDim; ++k) v[k] -= q * row[k];
    col = pc + 1;
  }
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

double drift_report(const Trajectory& traj, const InvariantMonomial& inv) {
  if (traj.samples.empty()) throw InvalidArgument("empty trajectory");
  const double i0 = inv.evaluate(traj.front().g);
  double worst = 0.0;
  for (const auto& s : traj.samples) worst = std::max(worst, std::abs(inv.evaluate(s.g) - i0) / std::abs(i0));
  return worst;
}

double special_drift(const Trajectory& traj, const SpecialInvariant& inv) {
  if (traj.samples.empty()) throw InvalidArgument("empty trajectory");
  const double i0 = inv.evaluate(traj.front().g);
  double worst = 0.0;
  for (const auto& s : traj.samples) {
    const double v = inv.evaluate(s.g);
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, i0 != 0.0 ? std::abs(v - i0) / std::abs(i0) : std::abs(v));
  }
  return worst;
}

std::array<double, 4> d3_substitution(const Vec5& g) {
  const auto [A, B, C, D, E] = g;
  return {A / (B * E), A / (C * D), B / (C * E), C / (D * E)};
}

std::vector<RatioDiagnostic> ratio_diagnostics(ModelId model, const Trajectory& traj) {
  std::vector<RatioDiagnostic> out;
  auto series = [&](std::string name, double target, auto&& f) {
    RatioDiagnostic d{std::move(name), {}, target};
    for (const auto& s : traj.samples)
      if (s.t > 0.0) d.series.emplace_back(s.t, f(s.g));
    out.push_back(std::move(d));
  };
  switch (model) {
    case ModelId::D2:
      series("AC/B^2", 1.0, [](const Vec5& g) { return g[0] * g[2] / (g[1] * g[1]); });
      break;
    case ModelId::D3:
      series("x/y", 1.0, [](const Vec5& g) { auto v = d3_substitution(g); return v[0] / v[1]; });
      series("z/w", 1.0, [](const Vec5& g) { auto v = d3_substitution(g); return v[2] / v[3]; });
      series("x/z", 2.0 / 3.0, [](const Vec5& g) { auto v = d3_substitution(g); return v[0] / v[2]; });
      series("y/w", 2.0 / 3.0, [](const Vec5& g) { auto v = d3_substitution(g); return v[1] / v[3]; });
      break;
    case ModelId::D11: {
      series("B/C", 1.0, [](const Vec5& g) { return g[1] / g[2]; });
      RatioDiagnostic d{"dlogD/dlogt", {}, 0.0};
      const Sample* prev = nullptr;
      for (const auto& s : traj.samples) {
        if (s.t <= 0.0) continue;
        if (prev)
          d.series.emplace_back(s.t, std::log(s.g[3] / prev->g[3]) / std::log(s.t / prev->t));
        prev = &s;
      }
      out.push_back(std::move(d));
      break;
    }
    default: break;
  }
  return out;
}

}  // namespace solvflow
