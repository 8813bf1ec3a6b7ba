// Timing of one coarsening run per method on random regular graphs.

#include "coarsen/baselines.hpp"
#include "coarsen/eigensolver.hpp"
#include "coarsen_tools/bench.hpp"
#include "coarsen_tools/experiment.hpp"

#include <benchmark/benchmark.h>

using namespace coarsen;

namespace {

Laplacian graph_with_edges(benchmark::State& state) {
  return build_laplacian(tools::bench_graph(static_cast<Index>(state.range(0)), 10, 1));
}

void run(benchmark::State& state, Method m) {
  const Laplacian l = graph_with_edges(state);
  BaselineOptions opts;
  opts.k = 10;
  const Index target = tools::target_size(l.dim(), 0.5, opts.k);
  for (auto _ : state) {
    Hierarchy h = run_method(l, m, target, opts);
    benchmark::DoNotOptimize(h);
  }
  state.SetComplexityN(state.range(0));
}

void BM_LocalVarEdge(benchmark::State& s) { run(s, Method::local_var_edge); }
void BM_LocalVarNeigh(benchmark::State& s) { run(s, Method::local_var_neigh); }
void BM_HeavyEdge(benchmark::State& s) { run(s, Method::heavy_edge); }
void BM_Kron(benchmark::State& s) { run(s, Method::kron); }

void BM_SmallestEigenpairs(benchmark::State& state) {
  const Laplacian l = graph_with_edges(state);
  for (auto _ : state) {
    EigenBasis b = smallest_eigenpairs(l, 10);
    benchmark::DoNotOptimize(b);
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_LocalVarEdge)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_LocalVarNeigh)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_HeavyEdge)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_Kron)->RangeMultiplier(2)->Range(1 << 10, 1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmallestEigenpairs)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();

BENCHMARK_MAIN();
