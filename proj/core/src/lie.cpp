#include "solvflow/lie.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "solvflow/errors.hpp"

namespace solvflow {

StructureConstants::StructureConstants(std::size_t dim) : dim_(dim), c_(dim * dim * dim, 0.0) {
  if (dim == 0) throw InvalidArgument("structure constants need a positive dimension");
}

void StructureConstants::set_bracket(std::size_t i, std::size_t j, std::span<const double> coeffs) {
  if (coeffs.size() != dim_) throw DimensionMismatch("bracket coefficient vector has wrong length");
  if (i >= dim_ || j >= dim_) throw DimensionMismatch("basis index out of range");
  if (i == j) {
    if (std::any_of(coeffs.begin(), coeffs.end(), [](double x) { return x != 0.0; }))
      throw InvalidArgument("[X_i, X_i] must vanish");
    return;
  }
  for (std::size_t k = 0; k < dim_; ++k) {
    c_[(i * dim_ + j) * dim_ + k] = coeffs[k];
    c_[(j * dim_ + i) * dim_ + k] = -coeffs[k];
  }
}

void StructureConstants::set(std::size_t i, std::size_t j, std::size_t k, double value) {
  if (i >= dim_ || j >= dim_ || k >= dim_) throw DimensionMismatch("basis index out of range");
  if (i == j) {
    if (value != 0.0) throw InvalidArgument("[X_i, X_i] must vanish");
    return;
  }
  c_[(i * dim_ + j) * dim_ + k] = value;
  c_[(j * dim_ + i) * dim_ + k] = -value;
}

double StructureConstants::max_abs_difference(const StructureConstants& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("structure constants of different dimension");
  double m = 0.0;
  for (std::size_t n = 0; n < c_.size(); ++n) m = std::max(m, std::abs(c_[n] - other.c_[n]));
  return m;
}

BasisChange::BasisChange(std::size_t dim) : dim_(dim), m_(dim * dim, 0.0) {
  for (std::size_t i = 0; i < dim; ++i) m_[i * dim + i] = 1.0;
}

BasisChange::BasisChange(std::size_t dim, std::vector<double> entries)
    : dim_(dim), m_(std::move(entries)) {
  if (m_.size() != dim * dim) throw DimensionMismatch("basis change matrix has wrong size");
  for (std::size_t i = 0; i < dim; ++i) {
    if (m_[i * dim + i] != 1.0) throw InvalidArgument("basis change must have unit diagonal");
    for (std::size_t k = i + 1; k < dim; ++k)
      if (m_[i * dim + k] != 0.0) throw InvalidArgument("basis change must be lower triangular");
    for (std::size_t k = 0; k < i; ++k)
      if (!std::isfinite(m_[i * dim + k])) throw InvalidArgument("basis change entry not finite");
  }
}

BasisChange BasisChange::from_entries(const std::array<double, 10>& a) {
  std::vector<double> m(25, 0.0);
  for (std::size_t i = 0; i < 5; ++i) m[i * 5 + i] = 1.0;
  // a_n sits in column-major order below the diagonal.
  std::size_t n = 0;
  for (std::size_t col = 0; col < 4; ++col)
    for (std::size_t row = col + 1; row < 5; ++row) m[row * 5 + col] = a[n++];
  return BasisChange(5, std::move(m));
}

BasisChange BasisChange::inverse() const {
  const std::size_t n = dim_;
  std::vector<double> inv(n * n, 0.0);
  // Solve L * X = I column by column.
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = (i == col) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= m_[i * n + k] * inv[k * n + col];
      const double diag = m_[i * n + i];
      if (std::abs(diag) < 1e-300) throw InvalidArgument("singular basis change");
      inv[i * n + col] = s / diag;
    }
  }
  // Entries above the diagonal are exact zeros from the substitution.
  return BasisChange(n, std::move(inv));
}

Coefficients bracket_apply(const StructureConstants& sc, std::span<const double> u,
                           std::span<const double> v) {
  const std::size_t n = sc.dim();
  if (u.size() != n || v.size() != n)
    throw DimensionMismatch("vector length " + std::to_string(u.size()) + "/" +
                            std::to_string(v.size()) + " does not match dimension " +
                            std::to_string(n));
  Coefficients w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double uv = u[i] * v[j];
      if (uv == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) w[k] += uv * sc(i, j, k);
    }
  }
  return w;
}

double jacobi_residual(const StructureConstants& sc) {
  const std::size_t n = sc.dim();
  double worst = 0.0;
  // [[X_i,X_j],X_l] + [[X_j,X_l],X_i] + [[X_l,X_i],X_j]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t p = 0; p < n; ++p) {
          double s = 0.0;
          for (std::size_t m = 0; m < n; ++m)
            s += sc(i, j, m) * sc(m, l, p) + sc(j, l, m) * sc(m, i, p) + sc(l, i, m) * sc(m, j, p);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double unimodularity_defect(const StructureConstants& sc) {
  const std::size_t n = sc.dim();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += sc(j, i, i);
    worst = std::max(worst, std::abs(tr));
  }
  return worst;
}

StructureConstants change_basis(const StructureConstants& sc, const BasisChange& t) {
  const std::size_t n = sc.dim();
  if (t.dim() != n) throw DimensionMismatch("basis change and structure constants differ in dimension");
  const BasisChange tinv = t.inverse();

  // [Y_i, Y_j] = sum_{p,q} t(i,p) t(j,q) c(p,q,r) X_r, then X_r = sum_m tinv(r,m) Y_m.
  StructureConstants out(n);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::fill(x.begin(), x.end(), 0.0);
      for (std::size_t p = 0; p < n; ++p) {
        const double tip = t(i, p);
        if (tip == 0.0) continue;
        for (std::size_t q = 0; q < n; ++q) {
          const double w = tip * t(j, q);
          if (w == 0.0) continue;
          for (std::size_t r = 0; r < n; ++r) x[r] += w * sc(p, q, r);
        }
      }
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t m = 0; m < n; ++m) y[m] += x[r] * tinv(r, m);
      out.set_bracket(i, j, y);
    }
  return out;
}

std::vector<std::string> bracket_table(const StructureConstants& sc, std::string_view symbol) {
  const std::size_t n = sc.dim();
  const std::string sym(symbol);
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < n; ++k) {
        const double c = sc(i, j, k);
        if (c == 0.0) continue;
        const double mag = std::abs(c);
        if (rhs.empty())
          rhs += c < 0 ? "-" : "";
        else
          rhs += c < 0 ? " - " : " + ";
        if (mag != 1.0) {
          char buf[32];
          auto res = std::to_chars(buf, buf + sizeof buf, mag);
          rhs.append(buf, res.ptr);
          rhs += ' ';
        }
        rhs += sym + std::to_string(k + 1);
      }
      if (rhs.empty()) continue;
      rows.push_back("[" + sym + std::to_string(i + 1) + "," + sym + std::to_string(j + 1) + "] = " + rhs);
    }
  return rows;
}

}  // namespace solvflow
