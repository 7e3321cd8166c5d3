#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "solvflow/catalog.hpp"
#include "solvflow/curvature.hpp"
#include "solvflow/errors.hpp"

using namespace solvflow;

TEST_CASE("model ids parse and print") {
  for (ModelId id : kModels) CHECK(parse_model(to_string(id)) == id);
  CHECK(parse_model("d11") == ModelId::D11);
  CHECK_FALSE(parse_model("D4").has_value());
  for (auto c : {CaseLabel::case1, CaseLabel::case2, CaseLabel::self_similar, CaseLabel::generic, CaseLabel::exact})
    CHECK(parse_case(to_string(c)) == c);
}

TEST_CASE("parameters are model specific") {
  ModelParams d1(ModelId::D1);
  CHECK_THROWS_AS(d1.set(Param::delta, 1.0), InvalidArgument);
  CHECK_THROWS_AS(d1.get(Param::kappa), InvalidArgument);
  CHECK_THROWS_AS(d1.set_epsilon(-1), InvalidArgument);
  d1.set("beta", 2.5);
  CHECK(d1.get(Param::beta) == 2.5);
  CHECK(model_parameters(ModelId::D5).size() == 7);
  CHECK(model_parameters(ModelId::D11).size() == 8);
}

TEST_CASE("initial data must be positive") {
  CHECK_THROWS_AS(InitialData({1, 1, 0, 1, 1}), NonpositiveMetric);
  CHECK_THROWS_AS(InitialData({1, -1, 1, 1, 1}), NonpositiveMetric);
  CHECK_NOTHROW(InitialData({1, 2, 3, 4, 5}));
}

TEST_CASE("constrained parameters") {
  for (Param p : model_parameters(ModelId::D1)) CHECK(constrained_params(ModelId::D1).get(p) == 0.0);
  for (Param p : model_parameters(ModelId::D5)) CHECK(constrained_params(ModelId::D5).get(p) == 0.0);
  for (int eps : {1, -1}) {
    const ModelParams p = constrained_params(ModelId::D11, eps);
    CHECK(p.get(Param::kappa) == eps);
    CHECK(p.get(Param::kappa) * p.get(Param::kappa) == 1.0);
    for (Param q : model_parameters(ModelId::D11))
      if (q != Param::kappa) CHECK(p.get(q) == 0.0);
  }
}

TEST_CASE("Y-basis tables at constrained parameters") {
  const StructureConstants d1 = build_model(constrained_params(ModelId::D1));
  CHECK(bracket_table(d1, "Y") == std::vector<std::string>{"[Y2,Y4] = Y1", "[Y3,Y5] = Y1"});

  const StructureConstants d3 = build_model(constrained_params(ModelId::D3));
  CHECK(bracket_table(d3, "Y") ==
        std::vector<std::string>{"[Y2,Y5] = Y1", "[Y3,Y4] = Y1", "[Y3,Y5] = Y2", "[Y4,Y5] = Y3"});

  const StructureConstants d11 = build_model(constrained_params(ModelId::D11));
  CHECK(d11(1, 4, 2) == 1.0);   // [Y2,Y5] = Y3
  CHECK(d11(2, 4, 1) == -1.0);  // [Y3,Y5] = -Y2
  CHECK(d11(3, 4, 0) == 1.0);   // [Y4,Y5] = Y1
}

TEST_CASE("catalog algebras are unimodular Lie algebras") {
  for (ModelId id : kModels) {
    const StructureConstants sc = build_model(constrained_params(id));
    CHECK(jacobi_residual(sc) < 1e-12);
    CHECK(unimodularity_defect(sc) < 1e-12);
  }
}

TEST_CASE("invariant lists") {
  auto exps = [](ModelId id) {
    std::vector<Exponents> out;
    for (const auto& m : model_invariants(id).monomials) out.push_back(m.exponents());
    return out;
  };
  CHECK(exps(ModelId::D1) ==
        std::vector<Exponents>{{1, 1, 1, 0, 0}, {1, 1, 0, 0, 1}, {1, 0, 1, 1, 0}, {1, 0, 0, 1, 1}});
  CHECK(exps(ModelId::D3) == std::vector<Exponents>{{5, 4, 3, 2, 1}});
  CHECK(exps(ModelId::D5) == std::vector<Exponents>{{1, 1, 0, 0, 0}, {1, 0, 1, 0, 0}});
  CHECK(model_invariants(ModelId::D11).special.size() == 2);
}

TEST_CASE("asymptotic exponent tables") {
  const auto d3 = model_asymptotics(ModelId::D3, CaseLabel::generic);
  CHECK(d3 == ExponentTable{Rational(-4, 11), Rational(-1, 11), Rational(2, 11), Rational(5, 11), Rational(8, 11)});
  const auto d2 = model_asymptotics(ModelId::D2, CaseLabel::case1);
  CHECK(d2 == ExponentTable{Rational(-3, 7), Rational(0), Rational(3, 7), Rational(1, 7), Rational(4, 7)});
  CHECK(model_asymptotics(ModelId::D11, CaseLabel::case1)[4] == Rational(1));
  CHECK_THROWS_AS(model_asymptotics(ModelId::D5, CaseLabel::case2), InvalidArgument);
}

TEST_CASE("exponent tables are orthogonal to the invariants") {
  for (ModelId id : kModels)
    for (CaseLabel c : model_cases(id)) {
      const auto p = model_asymptotics(id, c);
      for (const auto& m : model_invariants(id).monomials) {
        Rational dot(0);
        for (std::size_t i = 0; i < kDim; ++i) dot += Rational(m[i]) * p[i];
        CHECK_MESSAGE(dot == Rational(0), to_string(id), " ", to_string(c), " ", m.str());
      }
    }
}

TEST_CASE("case classification") {
  CHECK(classify_case(ModelId::D1, InitialData({0.8, 1.2, 0.9, 1.5, 2.0})) == CaseLabel::case1);
  CHECK(classify_case(ModelId::D1, InitialData({1, 1, 2, 1, 1})) == CaseLabel::case2);
  CHECK(classify_case(ModelId::D2, InitialData({1, 2, 4, 1, 1})) == CaseLabel::case1);
  CHECK(classify_case(ModelId::D2, InitialData({1, 2, 1, 1, 1})) == CaseLabel::case2);
  CHECK(classify_case(ModelId::D3, InitialData({2.0 / 3.0, 1, 1, 1, 1})) == CaseLabel::self_similar);
  CHECK(classify_case(ModelId::D3, InitialData({1, 1, 1, 1, 1})) == CaseLabel::generic);
  CHECK(classify_case(ModelId::D5, InitialData({3, 1, 2, 1, 1})) == CaseLabel::exact);
  CHECK(classify_case(ModelId::D11, InitialData({1, 1.3, 1.3, 1, 1})) == CaseLabel::case1);
  CHECK(classify_case(ModelId::D11, InitialData({1, 2, 1, 1, 1})) == CaseLabel::case2);
}

TEST_CASE("tabulated Ricci diagonals at unit metric") {
  const Vec5 one{1, 1, 1, 1, 1};
  CHECK(tabulated_ricci_diagonal(ModelId::D1, one) == Vec5{1, -0.5, -0.5, -0.5, -0.5});
  CHECK(tabulated_ricci_diagonal(ModelId::D5, one) == Vec5{0.5, -0.5, -0.5, 0, -2});
  CHECK(tabulated_flow_system(ModelId::D5, one) == Vec5{-1, 1, 1, 0, 4});
  CHECK(tabulated_flow_system(ModelId::D3, one) == Vec5{-2, 0, 1, 2, 3});
  CHECK(tabulated_flow_system(ModelId::D1, one) == Vec5{-2, 1, 1, 1, 1});
}

TEST_CASE("tabulated tables agree with curvature away from D11") {
  // D11 differs by the Killing-form term in Ric(Y5, Y5); see the acceptance report.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
  for (ModelId id : {ModelId::D1, ModelId::D2, ModelId::D3, ModelId::D5}) {
    const StructureConstants sc = build_model(constrained_params(id));
    for (int n = 0; n < 20; ++n) {
      Vec5 g;
      for (double& x : g) x = std::exp(u(rng));
      const auto ric = ricci_tensor(sc, DiagonalMetric(g)).diagonal();
      const Vec5 tab = tabulated_ricci_diagonal(id, g);
      for (std::size_t i = 0; i < kDim; ++i) CHECK(ric[i] == doctest::Approx(tab[i]).epsilon(1e-12));
    }
  }
  const Vec5 g{1.3, 0.7, 2.1, 0.9, 1.7};
  const auto ric = ricci_tensor(build_model(constrained_params(ModelId::D11)), DiagonalMetric(g)).diagonal();
  CHECK(ric[4] - tabulated_ricci_diagonal(ModelId::D11, g)[4] == doctest::Approx(1.0 / g[4]).epsilon(1e-12));
}

TEST_CASE("describe output") {
  const std::string text = describe_text(ModelId::D3);
  CHECK(text.find("(-4/11, -1/11, 2/11, 5/11, 8/11)") != std::string::npos);
  const auto j = nlohmann::json::parse(describe_json(ModelId::D5));
  CHECK(j.at("model") == "D5");
  CHECK(j.contains("invariants"));
  CHECK(j.contains("asymptotics"));
}
