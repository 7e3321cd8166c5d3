#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "solvflow/catalog.hpp"
#include "solvflow/flow.hpp"
#include "solvflow/monomial.hpp"

namespace solvflow {

struct DetectionOptions {
  int points = 25;           // random metrics per test
  double threshold = 1e-10;  // relative to sum_i |e_i dlog g_i|
  std::uint64_t seed = 0x5eedf1005eedULL;
};

// Every primitive, canonically signed exponent vector with |e_i| <= max_exp
// whose monomial has zero log-derivative under the curvature flow at
// `points` random metrics (coefficients log-uniform in [0.1, 10]).
std::vector<InvariantMonomial> detect_monomials(const StructureConstants& sc, int max_exp,
                                                const DetectionOptions& opt = {});
std::vector<InvariantMonomial> detect_monomials(const ModelParams& params, int max_exp,
                                                const DetectionOptions& opt = {});

// The random-point test for a single monomial.
bool is_conserved(const StructureConstants& sc, const InvariantMonomial& m, const DetectionOptions& opt = {});

// Hermite normal form (row echelon, positive pivots, reduced above pivots) of
// the lattice spanned by the given vectors. Zero rows are dropped.
std::vector<Exponents> lattice_basis(std::span<const InvariantMonomial> vectors);
std::vector<Exponents> lattice_basis(std::span<const Exponents> vectors);

// Whether v is an integer combination of the rows of an HNF basis.
bool lattice_contains(std::span<const Exponents> hnf, const Exponents& v);

// max over samples of |I(t) - I(0)| / |I(0)|.
double drift_report(const Trajectory& traj, const InvariantMonomial& inv);

// Relative drift as above; if I(0) is zero, the largest |I(t)| instead.
double special_drift(const Trajectory& traj, const SpecialInvariant& inv);

struct RatioDiagnostic {
  std::string name;
  std::vector<std::pair<double, double>> series;  // (t, value), t > 0
  double target = 0.0;

  double final_value() const { return series.empty() ? 0.0 : series.back().second; }
};

// D2: AC/B^2 -> 1. D3: x/y, z/w -> 1 and x/z, y/w -> 2/3 with x = A/BE,
// y = A/CD, z = B/CE, w = C/DE. D11: B/C -> 1 and the local slope
// d log D / d log t -> 0. Other models: empty.
std::vector<RatioDiagnostic> ratio_diagnostics(ModelId model, const Trajectory& traj);

// (x, y, z, w) of the D3 substitution.
std::array<double, 4> d3_substitution(const Vec5& g);

}  // namespace solvflow
