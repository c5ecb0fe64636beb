#include <benchmark/benchmark.h>

#include <map>

#include "al/semantics.hpp"
#include "al/syntax.hpp"
#include "al/theories.hpp"

using namespace al;

namespace {

void BM_CheckModelTwoElement(benchmark::State& state) {
  Model m = standard_two_element_model();
  for (auto _ : state) benchmark::DoNotOptimize(check_model(m, logic_E()));
}
BENCHMARK(BM_CheckModelTwoElement);

void BM_CheckModelPeanoDegenerate(benchmark::State& state) {
  Model m = degenerate_model(logic_peano().signature());
  for (auto _ : state) benchmark::DoNotOptimize(check_model(m, logic_peano()));
}
BENCHMARK(BM_CheckModelPeanoDegenerate);

// Equality2 has a unary metavariable, so its valuation count grows as c^c.
void BM_Equality2ByCarrier(benchmark::State& state) {
  const std::size_t c = static_cast<std::size_t>(state.range(0));
  const Signature sig = le_signature();
  std::map<std::string, OperatorInterp> interps;
  for (const auto& [name, shape] : sig.abstractions())
    interps.emplace(name, name == "forall" ? OperatorInterp{ForallLike{0, c > 1 ? Elem{1} : Elem{0}}}
                                           : OperatorInterp{ConstantElement{0}});
  Model wide(FiniteAlgebra(default_carrier(c), sig, interps), 0);
  Rule eq2 = logic_E().find("Equality2")->rule;
  for (auto _ : state) benchmark::DoNotOptimize(check_rule_valid(wide, eq2));
}
BENCHMARK(BM_Equality2ByCarrier)->DenseRange(1, 4);

void BM_SearchInconsistentModels(benchmark::State& state) {
  const Logic& boom = logic_explode();
  for (auto _ : state) benchmark::DoNotOptimize(search_models(boom, 2));
}
BENCHMARK(BM_SearchInconsistentModels)->Unit(benchmark::kMillisecond);

}  // namespace
