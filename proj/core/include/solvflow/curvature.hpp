#pragma once

#include <span>
#include <vector>

#include "solvflow/lie.hpp"
#include "solvflow/types.hpp"

namespace solvflow {

// g = sum_i g_i theta_i^2 with every g_i > 0.
class DiagonalMetric {
 public:
  // Throws NonpositiveMetric unless every coefficient is positive and finite.
  explicit DiagonalMetric(std::vector<double> coeffs);
  DiagonalMetric(const Vec5& coeffs);  // NOLINT(google-explicit-constructor)

  std::size_t dim() const noexcept { return g_.size(); }
  double operator[](std::size_t i) const { return g_[i]; }
  const std::vector<double>& coeffs() const noexcept { return g_; }

 private:
  std::vector<double> g_;
};

// Symmetric Ricci matrix in the orthonormal frame Y_i / sqrt(g_i).
class RicciForm {
 public:
  explicit RicciForm(std::size_t dim) : dim_(dim), r_(dim * dim, 0.0) {}

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return r_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    r_[i * dim_ + j] = v;
    r_[j * dim_ + i] = v;
  }

  std::vector<double> diagonal() const;
  double max_offdiagonal() const;

 private:
  std::size_t dim_;
  std::vector<double> r_;
};

// dg_i/dt for the diagonal coefficients.
using FlowRhs = std::vector<double>;

inline constexpr double kDefaultOffdiagTol = 1e-10;

// c_hat(i,j,k) = c(i,j,k) sqrt(g_k / (g_i g_j))
StructureConstants unit_frame_brackets(const StructureConstants& sc, const DiagonalMetric& g);

// Ric(W, W) for W = sum_i w_i Yhat_i:
//   -1/2 sum_i |[W,Yhat_i]|^2 - 1/2 sum_i <[W,[W,Yhat_i]],Yhat_i> + 1/2 sum_{i<j} <[Yhat_i,Yhat_j],W>^2
double ricci_quadratic(const StructureConstants& sc, const DiagonalMetric& g, std::span<const double> w);
// Same, with brackets already in the orthonormal frame.
double ricci_quadratic_unit(const StructureConstants& unit, std::span<const double> w);

// Symmetric bilinear form whose quadratic form is ricci_quadratic_unit, i.e.
// (Q(u + v) - Q(u) - Q(v)) / 2 expanded term by term.
double ricci_bilinear_unit(const StructureConstants& unit, std::span<const double> u, std::span<const double> v);

// R(i, j) = (Q(Yhat_i + Yhat_j) - Q(Yhat_i) - Q(Yhat_j)) / 2, R(i, i) = Q(Yhat_i).
// Evaluated through the expanded bilinear form so that entries which vanish
// identically come out as exact zeros.
RicciForm ricci_tensor(const StructureConstants& sc, const DiagonalMetric& g);

// dg_i/dt = -2 g_i Ric(Yhat_i, Yhat_i). Throws DiagonalityViolation if an
// off-diagonal entry exceeds offdiag_tol in magnitude.
FlowRhs flow_rhs(const StructureConstants& sc, const DiagonalMetric& g,
                 double offdiag_tol = kDefaultOffdiagTol);

}  // namespace solvflow
