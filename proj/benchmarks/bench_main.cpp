#include <benchmark/benchmark.h>

#include "algebroidkit/algebroid/cohomology.hpp"
#include "algebroidkit/algebroid/constructions.hpp"
#include "algebroidkit/pullback/pullback.hpp"
#include "algebroidkit/stackcoh/cech.hpp"

using namespace algebroidkit;

namespace {

void BM_VerifyTangent(benchmark::State& state) {
  const auto T = tangent_algebroid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_algebroid(T).valid);
}
BENCHMARK(BM_VerifyTangent)->DenseRange(1, 4);

void BM_AbelianCohomology(benchmark::State& state) {
  const std::size_t r = static_cast<std::size_t>(state.range(0));
  const auto A = abelian_lie_algebra(r);
  for (auto _ : state) benchmark::DoNotOptimize(algebroid_cohomology(A, Grading::preset("polynomial", 0, r), 0));
}
BENCHMARK(BM_AbelianCohomology)->DenseRange(2, 6);

void BM_PullbackTangent(benchmark::State& state) {
  const auto T = tangent_algebroid(2);
  const SplitSubmersion f = SplitSubmersion::projection(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pullback_algebroid(f, T));
}
BENCHMARK(BM_PullbackTangent)->DenseRange(1, 3);

void BM_CechSwap(benchmark::State& state) {
  const GroupoidAlgebroid swap{DeskGroupoid::cyclic(2), abelian_lie_algebra(2),
                               {PolyMatrix::identity(2, 0), PolyMatrix::constant({{0, 1}, {1, 0}}, 0)}};
  const Grading g = Grading::preset("polynomial", 0, 2);
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compare_total_vs_invariants(swap, N, g, 0).equal);
}
BENCHMARK(BM_CechSwap)->DenseRange(2, 5);

}  // namespace
BENCHMARK_MAIN();
