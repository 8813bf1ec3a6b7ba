#pragma once

#include "coarsen/baselines.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace coarsen::tools {

struct BenchOptions {
  std::vector<Method> methods{Method::local_var_edge};
  /// Graph sizes are 2^min_exp .. 2^max_exp edges, doubling.
  int min_exp = 10;
  int max_exp = 14;
  Index degree = 10;
  int reps = 10;
  /// Per-cell time budget in seconds.
  double cap_s = 100.0;
  Index k = 10;
  double ratio = 0.5;
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::string method;
  Index n_edges = 0;
  /// Mean over the completed repetitions; NaN when none ran.
  double mean_ms = 0.0;
  int reps = 0;
  /// The cap cut the repetitions short; once a method is censored its larger
  /// sizes are skipped and reported censored with zero repetitions.
  bool censored = false;
};

/// Random d-regular graph with as close to `edges` edges as n*d even allows.
WeightedGraph bench_graph(Index edges, Index degree, std::uint64_t seed);

/// Times run_method (eigenvectors included, graph generation excluded).
std::vector<BenchRow> run_bench(const BenchOptions& opts);

inline constexpr const char* kBenchSchema = "# coarsen bench v1";
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace coarsen::tools
