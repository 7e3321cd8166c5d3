#include "solvflow/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "solvflow/errors.hpp"

namespace solvflow {

namespace {

constexpr std::array<Param, 3> kParamsD123{Param::alpha, Param::beta, Param::gamma};
constexpr std::array<Param, 7> kParamsD5{Param::alpha, Param::beta, Param::gamma, Param::delta,
                                         Param::eta,   Param::mu,   Param::rho};
constexpr std::array<Param, 8> kParamsD11{Param::alpha, Param::beta,  Param::gamma, Param::delta,
                                          Param::eta,   Param::kappa, Param::rho,   Param::sigma};

constexpr std::array<CaseLabel, 2> kCasesNumbered{CaseLabel::case1, CaseLabel::case2};
constexpr std::array<CaseLabel, 2> kCasesD3{CaseLabel::self_similar, CaseLabel::generic};
constexpr std::array<CaseLabel, 1> kCasesD5{CaseLabel::exact};

bool rel_equal(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

void put(StructureConstants& sc, int i, int j, std::initializer_list<std::pair<int, double>> terms) {
  std::vector<double> v(sc.dim(), 0.0);
  for (auto [k, c] : terms) v[k - 1] += c;
  sc.set_bracket(i - 1, j - 1, v);
}

std::string_view description(ModelId id) {
  switch (id) {
    case ModelId::D1: return "2-step nilpotent, center spanned by X1 ([X2,X4]=[X3,X5]=X1)";
    case ModelId::D2: return "3-step nilpotent, [X3,X5]=X2 on top of a Heisenberg-type center";
    case ModelId::D3: return "4-step nilpotent (filiform-type), adds [X4,X5]=X3 to D2";
    case ModelId::D5: return "solvable, ad X5 has eigenvalues -1, 1 on span(X2,X3)";
    case ModelId::D11: return "solvable, X5 rotates span(X2,X3), [X4,X5]=eps X1";
  }
  return "";
}

std::vector<std::string> closed_forms(ModelId id) {
  switch (id) {
    case ModelId::D1:
      return {"B^2 = omega C^2 + k and D^2 = eps D1 E^2 + l for all t",
              "case1 (k = 0): explicit quartic-root solution",
              "case2: implicit log relations for B, C, D, E"};
    case ModelId::D2:
      return {"case1 (B^2 = AC): B constant, Bernoulli relation 1/A = (l/2) D^3 + K D"};
    case ModelId::D3:
      return {"self_similar: pure powers of (t + c) with exponents -4/11, -1/11, 2/11, 5/11, 8/11"};
    case ModelId::D5:
      return {"exact: A = l1 s^(-1/3), B = l2 s^(1/3), C = l3 s^(1/3), D = l4, E = 4t + l5, "
              "s = 1 + 3 l1 t / (l2 l3)"};
    case ModelId::D11:
      return {"case1 (B = C): B = C for all t, D bounded and nondecreasing"};
  }
  return {};
}

// Printed ODE systems, at constrained parameters.
Vec5 rhs_d1(const Vec5& g) {
  const auto [A, B, C, D, E] = g;
  return {-A * A / (B * D) - A * A / (C * E), A / D, A / E, A / B, A / C};
}
Vec5 rhs_d2(const Vec5& g) {
  const auto [A, B, C, D, E] = g;
  return {-A * A / (B * E) - A * A / (C * D), -B * B / (C * E) + A / E, A / D + B / E, A / C,
          A / B + B / C};
}
Vec5 rhs_d3(const Vec5& g) {
  const auto [A, B, C, D, E] = g;
  return {-A * A / (B * E) - A * A / (C * D), -B * B / (C * E) + A / E,
          -C * C / (D * E) + A / D + B / E, A / C + C / E, A / B + B / C + C / D};
}
Vec5 rhs_d5(const Vec5& g) {
  const auto [A, B, C, D, E] = g;
  (void)D;
  (void)E;
  return {-A * A / (B * C), A / C, A / B, 0.0, 4.0};
}
Vec5 rhs_d11(const Vec5& g) {
  const auto [A, B, C, D, E] = g;
  return {-A * A / (B * C) - A * A / (D * E), -B * B / (C * E) + A / C + C / E,
          -C * C / (B * E) + A / B + B / E, A / E, C / B + B / C + A / D};
}

}  // namespace

std::string_view to_string(ModelId id) {
  switch (id) {
    case ModelId::D1: return "D1";
    case ModelId::D2: return "D2";
    case ModelId::D3: return "D3";
    case ModelId::D5: return "D5";
    case ModelId::D11: return "D11";
  }
  return "?";
}

std::optional<ModelId> parse_model(std::string_view name) {
  for (ModelId id : kModels)
    if (to_string(id) == name) return id;
  if (name == "d1") return ModelId::D1;
  if (name == "d2") return ModelId::D2;
  if (name == "d3") return ModelId::D3;
  if (name == "d5") return ModelId::D5;
  if (name == "d11") return ModelId::D11;
  return std::nullopt;
}

std::string_view to_string(Param p) {
  switch (p) {
    case Param::alpha: return "alpha";
    case Param::beta: return "beta";
    case Param::gamma: return "gamma";
    case Param::delta: return "delta";
    case Param::eta: return "eta";
    case Param::mu: return "mu";
    case Param::rho: return "rho";
    case Param::kappa: return "kappa";
    case Param::sigma: return "sigma";
  }
  return "?";
}

std::optional<Param> parse_param(std::string_view name) {
  for (Param p : {Param::alpha, Param::beta, Param::gamma, Param::delta, Param::eta, Param::mu,
                  Param::rho, Param::kappa, Param::sigma})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

std::span<const Param> model_parameters(ModelId id) {
  switch (id) {
    case ModelId::D1:
    case ModelId::D2:
    case ModelId::D3: return kParamsD123;
    case ModelId::D5: return kParamsD5;
    case ModelId::D11: return kParamsD11;
  }
  return {};
}

ModelParams::ModelParams(ModelId id) : id_(id) {}

void ModelParams::require(Param p) const {
  const auto ps = model_parameters(id_);
  if (std::find(ps.begin(), ps.end(), p) == ps.end())
    throw InvalidArgument("parameter '" + std::string(to_string(p)) + "' does not belong to model " +
                          std::string(to_string(id_)));
}

double ModelParams::get(Param p) const {
  require(p);
  return values_[static_cast<std::size_t>(p)];
}

ModelParams& ModelParams::set(Param p, double value) {
  require(p);
  if (!std::isfinite(value)) throw InvalidArgument("parameter value must be finite");
  values_[static_cast<std::size_t>(p)] = value;
  return *this;
}

ModelParams& ModelParams::set(std::string_view name, double value) {
  const auto p = parse_param(name);
  if (!p) throw InvalidArgument("unknown parameter '" + std::string(name) + "'");
  return set(*p, value);
}

ModelParams& ModelParams::set_epsilon(int eps) {
  if (eps != 1 && eps != -1) throw InvalidArgument("epsilon must be +1 or -1");
  if (id_ != ModelId::D11 && eps != 1) throw InvalidArgument("epsilon only applies to D11");
  epsilon_ = eps;
  return *this;
}

InitialData::InitialData(const Vec5& lambda) : lambda_(lambda) {
  for (double l : lambda_)
    if (!(l > 0.0) || !std::isfinite(l))
      throw NonpositiveMetric("initial metric coefficients must be positive and finite");
}

std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::case1: return "case1";
    case CaseLabel::case2: return "case2";
    case CaseLabel::self_similar: return "self_similar";
    case CaseLabel::generic: return "generic";
    case CaseLabel::exact: return "exact";
  }
  return "?";
}

std::optional<CaseLabel> parse_case(std::string_view name) {
  for (CaseLabel c : {CaseLabel::case1, CaseLabel::case2, CaseLabel::self_similar,
                      CaseLabel::generic, CaseLabel::exact})
    if (to_string(c) == name) return c;
  if (name == "self-similar") return CaseLabel::self_similar;
  return std::nullopt;
}

std::span<const CaseLabel> model_cases(ModelId id) {
  switch (id) {
    case ModelId::D1:
    case ModelId::D2:
    case ModelId::D11: return kCasesNumbered;
    case ModelId::D3: return kCasesD3;
    case ModelId::D5: return kCasesD5;
  }
  return {};
}

CaseLabel classify_case(ModelId id, const InitialData& init) {
  const auto [l1, l2, l3, l4, l5] = init.lambda();
  switch (id) {
    case ModelId::D1: return rel_equal(l2 * l4, l3 * l5) ? CaseLabel::case1 : CaseLabel::case2;
    case ModelId::D2: return rel_equal(l2 * l2, l1 * l3) ? CaseLabel::case1 : CaseLabel::case2;
    case ModelId::D3:
      return rel_equal(l2 * l5, l3 * l4) && rel_equal(l2 * l4, l3 * l3) &&
                     rel_equal(3 * l1 * l5, 2 * l3 * l3)
                 ? CaseLabel::self_similar
                 : CaseLabel::generic;
    case ModelId::D5: return CaseLabel::exact;
    case ModelId::D11: return rel_equal(l2, l3) ? CaseLabel::case1 : CaseLabel::case2;
  }
  throw InvalidArgument("unknown model");
}

StructureConstants x_basis(ModelId id, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw InvalidArgument("epsilon must be +1 or -1");
  StructureConstants sc(5);
  switch (id) {
    case ModelId::D1:
      put(sc, 2, 4, {{1, 1.0}});
      put(sc, 3, 5, {{1, 1.0}});
      break;
    case ModelId::D2:
      put(sc, 2, 5, {{1, 1.0}});
      put(sc, 3, 4, {{1, 1.0}});
      put(sc, 3, 5, {{2, 1.0}});
      break;
    case ModelId::D3:
      put(sc, 2, 5, {{1, 1.0}});
      put(sc, 3, 4, {{1, 1.0}});
      put(sc, 3, 5, {{2, 1.0}});
      put(sc, 4, 5, {{3, 1.0}});
      break;
    case ModelId::D5:
      put(sc, 2, 3, {{1, 1.0}});
      put(sc, 2, 5, {{2, 1.0}});
      put(sc, 3, 5, {{3, -1.0}});
      put(sc, 4, 5, {{1, 1.0}});
      break;
    case ModelId::D11:
      put(sc, 2, 3, {{1, 1.0}});
      put(sc, 2, 5, {{3, 1.0}});
      put(sc, 3, 5, {{2, -1.0}});
      put(sc, 4, 5, {{1, static_cast<double>(epsilon)}});
      break;
  }
  return sc;
}

StructureConstants build_model(const ModelParams& p) {
  StructureConstants sc(5);
  const auto v = [&](Param q) { return p.get(q); };
  switch (p.model()) {
    case ModelId::D1: {
      const double a = v(Param::alpha), b = v(Param::beta), c = v(Param::gamma);
      put(sc, 2, 4, {{1, 1.0}});
      put(sc, 2, 5, {{1, a}});
      put(sc, 3, 4, {{1, b}});
      put(sc, 3, 5, {{1, a * b + 1.0}});
      put(sc, 4, 5, {{1, c}});
      break;
    }
    case ModelId::D2:
    case ModelId::D3: {
      const double a = v(Param::alpha), b = v(Param::beta), c = v(Param::gamma);
      put(sc, 2, 5, {{1, 1.0}});
      put(sc, 3, 4, {{1, 1.0}});
      put(sc, 3, 5, {{1, a}, {2, 1.0}});
      if (p.model() == ModelId::D2)
        put(sc, 4, 5, {{1, b}, {2, c}});
      else
        put(sc, 4, 5, {{1, b}, {2, c}, {3, 1.0}});
      break;
    }
    case ModelId::D5: {
      const double a = v(Param::alpha), b = v(Param::beta), c = v(Param::gamma);
      const double d = v(Param::delta), e = v(Param::eta), m = v(Param::mu), r = v(Param::rho);
      put(sc, 2, 3, {{1, 1.0}});
      put(sc, 2, 4, {{1, a}});
      put(sc, 2, 5, {{1, b}, {2, 1.0}});
      put(sc, 3, 4, {{1, c}});
      put(sc, 3, 5, {{1, d}, {2, e}, {3, -1.0}});
      put(sc, 4, 5, {{1, m}, {2, r}, {3, -a}});
      break;
    }
    case ModelId::D11: {
      const double a = v(Param::alpha), b = v(Param::beta), c = v(Param::gamma);
      const double d = v(Param::delta), e = v(Param::eta), k = v(Param::kappa);
      const double r = v(Param::rho), s = v(Param::sigma);
      put(sc, 2, 3, {{1, 1.0}});
      put(sc, 2, 4, {{1, a}});
      put(sc, 2, 5, {{1, b}, {2, c}, {3, 1.0}});
      put(sc, 3, 4, {{1, d}});
      put(sc, 3, 5, {{1, e}, {2, -1.0 - c * c}, {3, -c}});
      put(sc, 4, 5, {{1, k}, {2, r}, {3, s}});
      break;
    }
  }
  return sc;
}

ModelParams constrained_params(ModelId id, int epsilon) {
  ModelParams p(id);
  if (id == ModelId::D11) {
    p.set_epsilon(epsilon);
    p.set(Param::kappa, static_cast<double>(epsilon));
  } else if (epsilon != 1) {
    throw InvalidArgument("epsilon only applies to D11");
  }
  return p;
}

ModelParams params_from_basis(ModelId id, const std::array<double, 10>& a_in, int epsilon) {
  // a[1]..a[10] to match the usual numbering.
  std::array<double, 11> a{};
  std::copy(a_in.begin(), a_in.end(), a.begin() + 1);
  ModelParams p(id);
  switch (id) {
    case ModelId::D1:
      p.set(Param::alpha, a[10]);
      p.set(Param::beta, a[5]);
      p.set(Param::gamma, a[6] * a[10] - a[7] + a[8]);
      break;
    case ModelId::D2:
      p.set(Param::alpha, a[10] + a[5] - a[1]);
      p.set(Param::beta, a[8] * a[10] - a[9] + a[6] - a[1] * a[8]);
      p.set(Param::gamma, a[8]);
      break;
    case ModelId::D3:
      p.set(Param::alpha, a[10] + a[5] - a[1]);
      p.set(Param::beta, a[8] * a[10] - a[9] + a[6] - a[1] * a[8] - a[2] + a[1] * a[5]);
      p.set(Param::gamma, a[8] - a[5]);
      break;
    case ModelId::D5:
      p.set(Param::alpha, a[8]);
      p.set(Param::beta, a[9] - a[1]);
      p.set(Param::gamma, a[5] * a[8] - a[6]);
      p.set(Param::delta, a[5] * a[9] - a[7] + a[2] - 2 * a[1] * a[5]);
      p.set(Param::eta, 2 * a[5]);
      p.set(Param::mu, -a[1] * a[5] * a[8] - a[1] * a[6] + a[2] * a[8] + a[6] * a[9] - a[7] * a[8] + 1);
      p.set(Param::rho, a[5] * a[8] + a[6]);
      break;
    case ModelId::D11:
      p.set_epsilon(epsilon);
      p.set(Param::alpha, a[8]);
      p.set(Param::beta, a[1] * a[5] - a[2] + a[9]);
      p.set(Param::gamma, -a[5]);
      p.set(Param::delta, a[5] * a[8] - a[6]);
      p.set(Param::eta, a[1] * a[5] * a[5] + a[1] - a[2] * a[5] + a[5] * a[9] - a[7]);
      p.set(Param::kappa,
            a[1] * a[5] * a[6] + a[1] * a[8] - a[2] * a[6] + a[6] * a[9] - a[7] * a[8] + epsilon);
      p.set(Param::rho, -a[5] * a[6] - a[8]);
      p.set(Param::sigma, a[6]);
      break;
  }
  if (id != ModelId::D11 && epsilon != 1) throw InvalidArgument("epsilon only applies to D11");
  return p;
}

ModelInvariants model_invariants(ModelId id) {
  ModelInvariants out;
  auto mono = [&](Exponents e) { out.monomials.emplace_back(e); };
  switch (id) {
    case ModelId::D1:
      mono({1, 1, 1, 0, 0});
      mono({1, 1, 0, 0, 1});
      mono({1, 0, 1, 1, 0});
      mono({1, 0, 0, 1, 1});
      break;
    case ModelId::D2:
      mono({1, 1, 1, 0, 0});
      mono({2, 1, 0, 2, 1});
      break;
    case ModelId::D3: mono({5, 4, 3, 2, 1}); break;
    case ModelId::D5:
      mono({1, 1, 0, 0, 0});
      mono({1, 0, 1, 0, 0});
      break;
    case ModelId::D11:
      mono({2, 1, 1, 2, 0});
      out.special.push_back({"A^2 E^2 (B^2 - C^2)", std::nullopt, [](const Vec5& g) {
                               return g[0] * g[0] * g[4] * g[4] * (g[1] * g[1] - g[2] * g[2]);
                             }});
      out.special.push_back({"(B + C) D^2 / ((B - C) E^2)", CaseLabel::case2, [](const Vec5& g) {
                               return (g[1] + g[2]) * g[3] * g[3] / ((g[1] - g[2]) * g[4] * g[4]);
                             }});
      break;
  }
  return out;
}

ExponentTable model_asymptotics(ModelId id, CaseLabel c) {
  const auto cases = model_cases(id);
  if (std::find(cases.begin(), cases.end(), c) == cases.end())
    throw InvalidArgument("case '" + std::string(to_string(c)) + "' is not defined for model " +
                          std::string(to_string(id)));
  switch (id) {
    case ModelId::D1: return {Rational(-1, 2), Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
    case ModelId::D2: return {Rational(-3, 7), Rational(0), Rational(3, 7), Rational(1, 7), Rational(4, 7)};
    case ModelId::D3:
      return {Rational(-4, 11), Rational(-1, 11), Rational(2, 11), Rational(5, 11), Rational(8, 11)};
    case ModelId::D5: return {Rational(-1, 3), Rational(1, 3), Rational(1, 3), Rational(0), Rational(1)};
    case ModelId::D11: return {Rational(-1, 3), Rational(1, 3), Rational(1, 3), Rational(0), Rational(1)};
  }
  throw InvalidArgument("unknown model");
}

Vec5 tabulated_ricci_diagonal(ModelId id, const Vec5& g) {
  const auto [A, B, C, D, E] = g;
  switch (id) {
    case ModelId::D1:
      return {A / (2 * B * D) + A / (2 * C * E), -A / (2 * B * D), -A / (2 * C * E), -A / (2 * B * D),
              -A / (2 * C * E)};
    case ModelId::D2:
      return {A / (2 * B * E) + A / (2 * C * D), B / (2 * C * E) - A / (2 * B * E),
              -A / (2 * C * D) - B / (2 * C * E), -A / (2 * C * D), -A / (2 * B * E) - B / (2 * C * E)};
    case ModelId::D3:
      return {A / (2 * B * E) + A / (2 * C * D), B / (2 * C * E) - A / (2 * B * E),
              C / (2 * D * E) - A / (2 * C * D) - B / (2 * C * E), -A / (2 * C * D) - C / (2 * D * E),
              -A / (2 * B * E) - B / (2 * C * E) - C / (2 * D * E)};
    case ModelId::D5:
      return {A / (2 * B * C), -A / (2 * B * C), -A / (2 * B * C), 0.0, -2.0 / E};
    case ModelId::D11:
      // kappa^2 = 1
      return {A / (2 * B * C) + A / (2 * D * E), B / (2 * C * E) - A / (2 * B * C) - C / (2 * B * E),
              C / (2 * B * E) - A / (2 * B * C) - B / (2 * C * E), -A / (2 * D * E),
              -C / (2 * B * E) - B / (2 * C * E) - A / (2 * D * E)};
  }
  throw InvalidArgument("unknown model");
}

Vec5 tabulated_flow_system(ModelId id, const Vec5& g) {
  switch (id) {
    case ModelId::D1: return rhs_d1(g);
    case ModelId::D2: return rhs_d2(g);
    case ModelId::D3: return rhs_d3(g);
    case ModelId::D5: return rhs_d5(g);
    case ModelId::D11: return rhs_d11(g);
  }
  throw InvalidArgument("unknown model");
}

ModelSpec model_spec(ModelId id) {
  const auto cases = model_cases(id);
  return ModelSpec{id,
                   description(id),
                   [](const ModelParams& p) { return build_model(p); },
                   constrained_params(id),
                   model_invariants(id),
                   std::vector<CaseLabel>(cases.begin(), cases.end()),
                   closed_forms(id)};
}

std::string describe_json(ModelId id) {
  using nlohmann::json;
  const ModelSpec spec = model_spec(id);
  json j;
  j["model"] = std::string(to_string(id));
  j["description"] = std::string(spec.description);
  j["x_brackets"] = bracket_table(x_basis(id), "X");
  j["y_brackets_constrained"] = bracket_table(build_model(spec.constraints), "Y");
  json params = json::object();
  for (Param p : model_parameters(id)) params[std::string(to_string(p))] = spec.constraints.get(p);
  j["constraints"] = params;
  if (id == ModelId::D11) j["epsilon"] = spec.constraints.epsilon();
  json inv = json::array();
  for (const auto& m : spec.invariants.monomials)
    inv.push_back({{"monomial", m.str()}, {"exponents", m.exponents()}});
  j["invariants"] = inv;
  json special = json::array();
  for (const auto& s : spec.invariants.special) {
    json e{{"name", s.name}};
    e["case"] = s.only_case ? json(std::string(to_string(*s.only_case))) : json("all");
    special.push_back(e);
  }
  j["special_invariants"] = special;
  json asym = json::object();
  for (CaseLabel c : spec.cases) {
    const auto table = model_asymptotics(id, c);
    json row = json::object();
    for (std::size_t i = 0; i < kDim; ++i)
      row[std::string(kComponentNames[i])] = {{"exponent", table[i].str()}, {"value", table[i].value()}};
    asym[std::string(to_string(c))] = row;
  }
  j["asymptotics"] = asym;
  j["closed_forms"] = spec.closed_forms;
  return j.dump(2);
}

std::string describe_text(ModelId id) {
  const ModelSpec spec = model_spec(id);
  std::ostringstream os;
  os << to_string(id) << ": " << spec.description << "\n\nX-basis brackets:\n";
  for (const auto& row : bracket_table(x_basis(id), "X")) os << "  " << row << "\n";
  os << "\nY-basis brackets at constrained parameters:\n";
  for (const auto& row : bracket_table(build_model(spec.constraints), "Y")) os << "  " << row << "\n";
  os << "\nConstraints:";
  for (Param p : model_parameters(id)) os << " " << to_string(p) << "=" << spec.constraints.get(p);
  if (id == ModelId::D11) os << " (epsilon=" << spec.constraints.epsilon() << ")";
  os << "\n\nInvariants:\n";
  for (const auto& m : spec.invariants.monomials) os << "  " << m.str() << "\n";
  for (const auto& s : spec.invariants.special)
    os << "  " << s.name << (s.only_case ? " [" + std::string(to_string(*s.only_case)) + "]" : "") << "\n";
  os << "\nExpected exponents (A, B, C, D, E):\n";
  for (CaseLabel c : spec.cases) {
    const auto t = model_asymptotics(id, c);
    os << "  " << to_string(c) << ": (";
    for (std::size_t i = 0; i < kDim; ++i) os << (i ? ", " : "") << t[i].str();
    os << ")\n";
  }
  os << "\nClosed forms:\n";
  for (const auto& s : spec.closed_forms) os << "  " << s << "\n";
  return os.str();
}

}  // namespace solvflow
