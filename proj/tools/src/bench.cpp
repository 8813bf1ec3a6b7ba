#include "coarsen_tools/bench.hpp"

#include "coarsen_tools/experiment.hpp"
#include "coarsen_tools/generators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

namespace coarsen::tools {

WeightedGraph bench_graph(Index edges, Index degree, std::uint64_t seed) {
  Index n = static_cast<Index>(std::llround(2.0 * static_cast<double>(edges) / static_cast<double>(degree)));
  n = std::max(n, degree + 1);
  if ((n * degree) % 2 != 0) ++n;
  return random_regular(n, degree, seed);
}

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  if (opts.min_exp < 1 || opts.max_exp < opts.min_exp || opts.max_exp > 30) throw ConfigError("bad size range");
  if (opts.reps < 1) throw ConfigError("reps must be positive");
  if (opts.cap_s < 0.0) throw ConfigError("cap must be non-negative");
  std::vector<WeightedGraph> graphs;
  for (int e = opts.min_exp; e <= opts.max_exp; ++e) {
    graphs.push_back(bench_graph(Index{1} << e, opts.degree, opts.seed + static_cast<std::uint64_t>(e)));
  }
  std::vector<BenchRow> rows;
  for (const Method m : opts.methods) {
    bool dead = false;
    for (const auto& g : graphs) {
      BenchRow row;
      row.method = to_string(m);
      row.n_edges = g.num_edges();
      if (dead) {
        row.mean_ms = std::numeric_limits<double>::quiet_NaN();
        row.censored = true;
        rows.push_back(row);
        continue;
      }
      const Laplacian l = build_laplacian(g);
      const Index n_target = target_size(l.dim(), opts.ratio, opts.k);
      BaselineOptions bo;
      bo.k = opts.k;
      bo.seed = opts.seed;
      double total = 0.0;
      for (int r = 0; r < opts.reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const Hierarchy h = run_method(l, m, n_target, bo);
        total += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ++row.reps;
        if (total > opts.cap_s) break;
      }
      row.mean_ms = 1e3 * total / row.reps;
      row.censored = row.reps < opts.reps || total > opts.cap_s;
      dead = row.censored;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchSchema << '\n' << "method,n_edges,mean_ms,reps,censored\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.n_edges << ',' << format_double(r.mean_ms) << ',' << r.reps << ','
        << (r.censored ? "true" : "false") << '\n';
  }
}

}  // namespace coarsen::tools
