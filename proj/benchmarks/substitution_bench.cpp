#include <benchmark/benchmark.h>

#include "al/substitution.hpp"
#include "al/syntax.hpp"
#include "al/theories.hpp"

using namespace al;

namespace {

/// n nested quantifiers over a body that mentions every binder and y.
Term nested(std::size_t n) {
  Term body = Term::var("y");
  for (std::size_t i = n; i-- > 0;) body = Term::var("P", {Term::var("x" + std::to_string(i)), body});
  for (std::size_t i = n; i-- > 0;) body = Term::abs(le_signature(), "forall", {"x" + std::to_string(i)}, {body});
  return body;
}

void BM_ApplyCaptureAvoiding(benchmark::State& state) {
  Term t = nested(static_cast<std::size_t>(state.range(0)));
  Substitution s;
  s.add({"y", 0}, Template::of(Term::var("x0")));
  s.add({"P", 2}, Template::make({"a", "b"}, Term::abs(le_signature(), "imp", {}, {Term::var("a"), Term::var("b")})));
  for (auto _ : state) benchmark::DoNotOptimize(apply_to_term(s, t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyCaptureAvoiding)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_ToCanonical(benchmark::State& state) {
  Term t = nested(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(to_canonical(t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToCanonical)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_AlphaEquivalence(benchmark::State& state) {
  Term t = nested(static_cast<std::size_t>(state.range(0)));
  Term u = apply_to_term(canonical_substitution(free_variables(t)), t);
  for (auto _ : state) benchmark::DoNotOptimize(alpha_eq_term(t, u));
}
BENCHMARK(BM_AlphaEquivalence)->RangeMultiplier(4)->Range(4, 256);

void BM_ParseAndPrint(benchmark::State& state) {
  const std::string text = "(forall x. A => B[x]) => A => (forall x. B[x]) => x == y => C[x] => C[y]";
  for (auto _ : state) benchmark::DoNotOptimize(print_term(parse_term(le_signature(), text)));
}
BENCHMARK(BM_ParseAndPrint);

}  // namespace
