#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solvflow/lie.hpp"
#include "solvflow/monomial.hpp"
#include "solvflow/rational.hpp"
#include "solvflow/types.hpp"

namespace solvflow {

enum class ModelId { D1, D2, D3, D5, D11 };

inline constexpr std::array<ModelId, 5> kModels{ModelId::D1, ModelId::D2, ModelId::D3, ModelId::D5,
                                                ModelId::D11};

std::string_view to_string(ModelId id);
std::optional<ModelId> parse_model(std::string_view name);

enum class Param { alpha, beta, gamma, delta, eta, mu, rho, kappa, sigma };

std::string_view to_string(Param p);
std::optional<Param> parse_param(std::string_view name);

// Parameters of the model's Y-basis bracket table, in table order.
std::span<const Param> model_parameters(ModelId id);

class ModelParams {
 public:
  // All parameters zero; epsilon = +1.
  explicit ModelParams(ModelId id);

  ModelId model() const noexcept { return id_; }

  // Throws InvalidArgument for a parameter that the model does not have.
  double get(Param p) const;
  ModelParams& set(Param p, double value);
  ModelParams& set(std::string_view name, double value);

  // Sign in the D11 X-basis bracket [X4, X5] = eps X1. Always +1 elsewhere.
  int epsilon() const noexcept { return epsilon_; }
  ModelParams& set_epsilon(int eps);

  bool operator==(const ModelParams&) const = default;

 private:
  void require(Param p) const;

  ModelId id_;
  std::array<double, 9> values_{};
  int epsilon_ = 1;
};

// Initial metric coefficients, all strictly positive.
class InitialData {
 public:
  explicit InitialData(const Vec5& lambda);
  const Vec5& lambda() const noexcept { return lambda_; }
  double operator[](std::size_t i) const { return lambda_[i]; }

 private:
  Vec5 lambda_;
};

enum class CaseLabel { case1, case2, self_similar, generic, exact };

std::string_view to_string(CaseLabel c);
std::optional<CaseLabel> parse_case(std::string_view name);

// Case labels valid for the model.
std::span<const CaseLabel> model_cases(ModelId id);

// D1: lambda2 lambda4 = lambda3 lambda5 -> case1; D2: lambda2^2 = lambda1 lambda3 -> case1;
// D3: the three self-similarity identities -> self_similar; D5: exact;
// D11: lambda2 = lambda3 -> case1. Equalities are tested to 1e-12 relative.
CaseLabel classify_case(ModelId id, const InitialData& init);

// Bracket table in the original basis X1..X5.
StructureConstants x_basis(ModelId id, int epsilon = 1);

// Y-basis bracket table with the given parameter values.
StructureConstants build_model(const ModelParams& params);

// Parameter values under which every off-diagonal Ricci entry vanishes.
ModelParams constrained_params(ModelId id, int epsilon = 1);

// Table parameters produced by the basis change with entries a1..a10.
ModelParams params_from_basis(ModelId id, const std::array<double, 10>& a, int epsilon = 1);

// Conserved quantity that is not a monomial.
struct SpecialInvariant {
  std::string name;
  std::optional<CaseLabel> only_case;  // empty: holds for every case
  std::function<double(const Vec5&)> evaluate;
};

struct ModelInvariants {
  std::vector<InvariantMonomial> monomials;
  std::vector<SpecialInvariant> special;
};

ModelInvariants model_invariants(ModelId id);

using ExponentTable = std::array<Rational, kDim>;

// Expected large-time exponents p with g_i ~ t^{p_i}. Throws InvalidArgument
// for a case label the model does not have.
ExponentTable model_asymptotics(ModelId id, CaseLabel c);

// Diagonal Ricci entries and flow right-hand sides exactly as tabulated for
// each model at its constrained parameters. These are kept separate from the
// curvature module so the two can be compared.
Vec5 tabulated_ricci_diagonal(ModelId id, const Vec5& g);
Vec5 tabulated_flow_system(ModelId id, const Vec5& g);

struct ModelSpec {
  ModelId id;
  std::string_view description;
  std::function<StructureConstants(const ModelParams&)> y_brackets;
  ModelParams constraints;
  ModelInvariants invariants;
  std::vector<CaseLabel> cases;
  std::vector<std::string> closed_forms;
};

ModelSpec model_spec(ModelId id);

// Pretty-printed metadata: brackets, constraints, invariants, exponents.
std::string describe_text(ModelId id);
std::string describe_json(ModelId id);

}  // namespace solvflow
