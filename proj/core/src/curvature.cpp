#include "solvflow/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solvflow/errors.hpp"

namespace solvflow {

DiagonalMetric::DiagonalMetric(std::vector<double> coeffs) : g_(std::move(coeffs)) {
  if (g_.empty()) throw DimensionMismatch("metric must have at least one coefficient");
  for (std::size_t i = 0; i < g_.size(); ++i)
    if (!(g_[i] > 0.0) || !std::isfinite(g_[i]))
      throw NonpositiveMetric("metric coefficient " + std::to_string(i + 1) + " is not positive");
}

DiagonalMetric::DiagonalMetric(const Vec5& coeffs)
    : DiagonalMetric(std::vector<double>(coeffs.begin(), coeffs.end())) {}

std::vector<double> RicciForm::diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = r_[i * dim_ + i];
  return d;
}

double RicciForm::max_offdiagonal() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) m = std::max(m, std::abs(r_[i * dim_ + j]));
  return m;
}

StructureConstants unit_frame_brackets(const StructureConstants& sc, const DiagonalMetric& g) {
  const std::size_t n = sc.dim();
  if (g.dim() != n) throw DimensionMismatch("metric and structure constants differ in dimension");
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::sqrt(g[i]);
  StructureConstants out(n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) row[k] = sc(i, j, k) * s[k] / (s[i] * s[j]);
      out.set_bracket(i, j, row);
    }
  return out;
}

double ricci_quadratic_unit(const StructureConstants& c, std::span<const double> w) {
  const std::size_t n = c.dim();
  if (w.size() != n) throw DimensionMismatch("vector length does not match dimension");

  // m[k*n+i]: component k of [W, Yhat_i]
  std::vector<double> m(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (w[j] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) m[k * n + i] += w[j] * c(j, i, k);
  }
  double sq = 0.0, tr = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      sq += m[k * n + i] * m[k * n + i];
      tr += m[k * n + i] * m[i * n + k];
    }
  double center = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double p = 0.0;
      for (std::size_t k = 0; k < n; ++k) p += c(i, j, k) * w[k];
      center += p * p;
    }
  return -0.5 * sq - 0.5 * tr + 0.5 * center;
}

double ricci_quadratic(const StructureConstants& sc, const DiagonalMetric& g, std::span<const double> w) {
  return ricci_quadratic_unit(unit_frame_brackets(sc, g), w);
}

double ricci_bilinear_unit(const StructureConstants& c, std::span<const double> u, std::span<const double> v) {
  const std::size_t n = c.dim();
  if (u.size() != n || v.size() != n) throw DimensionMismatch("vector length does not match dimension");
  // mu, mv: component k of [U, Yhat_l] at k*n+l
  std::vector<double> mu(n * n, 0.0), mv(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t k = 0; k < n; ++k) {
        mu[k * n + l] += u[j] * c(j, l, k);
        mv[k * n + l] += v[j] * c(j, l, k);
      }
  double sq = 0.0, tr = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      sq += mu[k * n + l] * mv[k * n + l];
      tr += mu[k * n + l] * mv[l * n + k];
    }
  double center = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double pu = 0.0, pv = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        pu += c(i, j, k) * u[k];
        pv += c(i, j, k) * v[k];
      }
      center += pu * pv;
    }
  return -0.5 * sq - 0.5 * tr + 0.5 * center;
}

RicciForm ricci_tensor(const StructureConstants& sc, const DiagonalMetric& g) {
  const StructureConstants c = unit_frame_brackets(sc, g);
  const std::size_t n = c.dim();
  // ad[i][k*n+l]: component k of [Yhat_i, Yhat_l]
  std::vector<std::vector<double>> ad(n, std::vector<double>(n * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) ad[i][k * n + l] = c(i, l, k);
  RicciForm r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double sq = 0.0, tr = 0.0, center = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          sq += ad[i][k * n + l] * ad[j][k * n + l];
          tr += ad[i][k * n + l] * ad[j][l * n + k];
        }
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) center += c(k, l, i) * c(k, l, j);
      r.set(i, j, -0.5 * sq - 0.5 * tr + 0.5 * center);
    }
  return r;
}

FlowRhs flow_rhs(const StructureConstants& sc, const DiagonalMetric& g, double offdiag_tol) {
  const RicciForm r = ricci_tensor(sc, g);
  const double off = r.max_offdiagonal();
  if (off > offdiag_tol)
    throw DiagonalityViolation("off-diagonal Ricci component " + std::to_string(off) +
                                   " exceeds tolerance; the diagonal ansatz is not preserved",
                               off);
  FlowRhs out(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) out[i] = -2.0 * g[i] * r(i, i);
  return out;
}

}  // namespace solvflow
