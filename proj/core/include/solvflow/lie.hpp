#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace solvflow {

using Coefficients = std::vector<double>;

// Structure constants of a finite-dimensional Lie algebra in a fixed basis.
// (*this)(i, j, k) is the coefficient of X_k in [X_i, X_j]; indices are 0-based.
// Storage is dense, dim^3 doubles.
class StructureConstants {
 public:
  explicit StructureConstants(std::size_t dim = 5);

  std::size_t dim() const noexcept { return dim_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  // [X_i, X_j] = sum_k coeffs[k] X_k, and [X_j, X_i] = -[X_i, X_j].
  void set_bracket(std::size_t i, std::size_t j, std::span<const double> coeffs);
  // Single coefficient with antisymmetric completion.
  void set(std::size_t i, std::size_t j, std::size_t k, double value);

  std::span<const double> data() const noexcept { return c_; }
  double max_abs_difference(const StructureConstants& other) const;

  bool operator==(const StructureConstants&) const = default;

 private:
  std::size_t dim_;
  std::vector<double> c_;
};

// Lower-unitriangular change of basis Y_i = sum_k L(i, k) X_k.
class BasisChange {
 public:
  explicit BasisChange(std::size_t dim = 5);  // identity
  // Row-major dim x dim matrix; throws InvalidArgument unless unitriangular.
  BasisChange(std::size_t dim, std::vector<double> entries);

  // Entries a1..a10 laid out row by row below the diagonal of a 5x5 matrix,
  // filling columns first:
  //   row 2: a1
  //   row 3: a2 a5
  //   row 4: a3 a6 a8
  //   row 5: a4 a7 a9 a10
  static BasisChange from_entries(const std::array<double, 10>& a);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t k) const { return m_[i * dim_ + k]; }

  // Forward substitution; the result is again lower-unitriangular.
  BasisChange inverse() const;

 private:
  std::size_t dim_;
  std::vector<double> m_;
};

// w[k] = sum_{i,j} u[i] v[j] c(i, j, k)
Coefficients bracket_apply(const StructureConstants& sc, std::span<const double> u,
                           std::span<const double> v);

// Largest absolute component of the Jacobi cyclic sum over all basis triples.
double jacobi_residual(const StructureConstants& sc);

// max_j |tr ad_{X_j}|
double unimodularity_defect(const StructureConstants& sc);

// Structure constants in the basis Y_i = sum_k t(i, k) X_k.
StructureConstants change_basis(const StructureConstants& sc, const BasisChange& t);

// Nonzero brackets [X_i, X_j], i < j, as text, e.g. "[Y3,Y5] = a Y1 + Y2" with
// 1-based indices.
std::vector<std::string> bracket_table(const StructureConstants& sc, std::string_view symbol = "X");

}  // namespace solvflow
