#include <benchmark/benchmark.h>

#include "sphcub/moments.hpp"
#include "sphcub/product.hpp"
#include "sphcub/ruleio.hpp"
#include "sphcub/search.hpp"
#include "sphcub/star.hpp"
#include "sphcub/symmetry.hpp"

namespace {

using namespace sphcub;

void BM_ClassTypesFast(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(count_class_types(int(st.range(0))));
}
BENCHMARK(BM_ClassTypesFast)->Arg(12)->Arg(100);

void BM_ClassTypesEnumerated(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(count_class_types_enumerated(int(st.range(0))));
}
BENCHMARK(BM_ClassTypesEnumerated)->Arg(10)->Arg(16);

void BM_LowerBound(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lp_lower_bound(int(st.range(0))));
}
BENCHMARK(BM_LowerBound)->Arg(4)->Arg(20);

void BM_FirstMinima(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(first_minima(int(st.range(0))));
}
BENCHMARK(BM_FirstMinima)->DenseRange(2, 10, 4);

void BM_MomentTable(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(moment_table(int(st.range(0))));
}
BENCHMARK(BM_MomentTable)->Arg(8)->Arg(20);

void BM_Solve(benchmark::State& st) {
  const auto rule = *find_builtin("bundled:m" + std::to_string(st.range(0)));
  const auto sys = assemble(rule.m, rule.structure);
  for (auto _ : st) benchmark::DoNotOptimize(solve(sys, SolveConfig{}));
}
BENCHMARK(BM_Solve)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Jacobian(benchmark::State& st) {
  const auto rule = *find_builtin("bundled:m8");
  const auto sys = assemble(rule.m, rule.structure);
  const auto x = pack(sys, rule);
  for (auto _ : st) benchmark::DoNotOptimize(jacobian(sys, x));
}
BENCHMARK(BM_Jacobian);

void BM_ProductRule(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(u3_product_rule(int(st.range(0))));
}
BENCHMARK(BM_ProductRule)->Arg(5)->Arg(20);

void BM_Verify(benchmark::State& st) {
  const auto rule = *find_builtin("bundled:m8");
  const auto pts = expand(rule);
  for (auto _ : st) benchmark::DoNotOptimize(verify(pts, rule.degree()));
}
BENCHMARK(BM_Verify);

}  // namespace

BENCHMARK_MAIN();
