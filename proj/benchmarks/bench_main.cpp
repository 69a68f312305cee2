#include <benchmark/benchmark.h>

#include "colorbal/harness.hpp"
#include "colorbal/reduction.hpp"

namespace {

using namespace colorbal;

GeneratedInstance instance_for(int d, NormKind norm, std::uint64_t seed) {
  GenSpec spec;
  spec.kind = GenKind::DirichletMixture;
  spec.d = d;
  spec.n = 2 * d;
  spec.min_size = 2;
  spec.max_size = 4;
  spec.norm = norm;
  spec.seed = seed;
  return generate(spec);
}

void BM_vertex_reduction(benchmark::State& state) {
  auto gen = instance_for(static_cast<int>(state.range(0)),
                          NormKind::Euclidean, 42);
  for (auto _ : state) {
    Coefficients alpha = find_zero_vertex(gen.instance);
    benchmark::DoNotOptimize(alpha);
  }
}
BENCHMARK(BM_vertex_reduction)->Arg(4)->Arg(8)->Arg(16);

void BM_balance_euclidean(benchmark::State& state) {
  auto gen = instance_for(static_cast<int>(state.range(0)),
                          NormKind::Euclidean, 7);
  BalanceOptions opt;
  for (auto _ : state) {
    BalanceReport rep = balance(gen.instance, gen.witness, opt);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_balance_euclidean)->Arg(4)->Arg(8)->Arg(16);

// Empirical growth of walk step counts against dimension; the per-step cost
// is dominated by the subspace rebuilds.
void BM_balance_maxnorm(benchmark::State& state) {
  auto gen = instance_for(static_cast<int>(state.range(0)),
                          NormKind::Maximum, 7);
  BalanceOptions opt;
  opt.norm = NormKind::Maximum;
  std::uint64_t seed = 0;
  long long steps = 0;
  for (auto _ : state) {
    opt.seed = seed++;
    BalanceReport rep = balance(gen.instance, gen.witness, opt);
    steps += rep.steps;
    benchmark::DoNotOptimize(rep);
  }
  state.counters["steps_per_run"] =
      benchmark::Counter(double(steps) / state.iterations());
}
BENCHMARK(BM_balance_maxnorm)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
