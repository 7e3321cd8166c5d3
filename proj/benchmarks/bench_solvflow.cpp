#include <benchmark/benchmark.h>

#include "solvflow/catalog.hpp"
#include "solvflow/curvature.hpp"
#include "solvflow/flow.hpp"
#include "solvflow/invariants.hpp"

using namespace solvflow;

namespace {

const Vec5 kLambda{0.7, 1.3, 0.9, 1.1, 1.8};

void BM_RicciTensor(benchmark::State& state) {
  const StructureConstants sc = build_model(constrained_params(ModelId::D3));
  const DiagonalMetric g(kLambda);
  for (auto _ : state) benchmark::DoNotOptimize(ricci_tensor(sc, g));
}
BENCHMARK(BM_RicciTensor);

void BM_FlowRhs(benchmark::State& state) {
  const StructureConstants sc = build_model(constrained_params(ModelId::D3));
  const DiagonalMetric g(kLambda);
  for (auto _ : state) benchmark::DoNotOptimize(flow_rhs(sc, g));
}
BENCHMARK(BM_FlowRhs);

void BM_Integrate(benchmark::State& state) {
  const double t_end = static_cast<double>(state.range(0));
  const FlowProblem p = FlowProblem::for_model(constrained_params(ModelId::D2), kLambda, t_end);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(p));
}
BENCHMARK(BM_Integrate)->Arg(100)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_DetectMonomials(benchmark::State& state) {
  const ModelParams p = constrained_params(ModelId::D1);
  const int max_exp = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(detect_monomials(p, max_exp));
}
BENCHMARK(BM_DetectMonomials)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
