#include "coarsen_tools/cli.hpp"

#include "coarsen/errors.hpp"
#include "coarsen/graph_io.hpp"
#include "coarsen/hierarchy_io.hpp"
#include "coarsen/metrics.hpp"
#include "coarsen_tools/bench.hpp"
#include "coarsen_tools/experiment.hpp"
#include "coarsen_tools/table.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace coarsen::tools {

namespace {

class BoundsFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_threshold(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad eps threshold '" + s + "'");
  }
  if (used != s.size() || std::isnan(v) || v < 0.0) throw ConfigError("bad eps threshold '" + s + "'");
  return v;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) {
    const auto m = parse_method(n);
    if (!m) throw ConfigError("unknown method " + n);
    out.push_back(*m);
  }
  return out;
}

// Writes to `path`, or to `out` when the path is empty.
template <class F>
void emit(const std::string& path, std::ostream& out, F&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot write " + path);
  write(f);
  if (!f) throw std::ios_base::failure("write failed for " + path);
}

struct CoarsenArgs {
  std::string input;
  std::string method = "local-var-edge";
  double ratio = 0.5;
  Index k = 10;
  std::uint64_t seed = 0;
  std::string eps = "inf";
  std::string out;
};

int cmd_coarsen(const CoarsenArgs& a, std::ostream& out) {
  const auto method = parse_method(a.method);
  if (!method) throw ConfigError("unknown method " + a.method);
  const double eps = parse_threshold(a.eps);
  const GraphInput g = resolve_graph(a.input);
  const Laplacian l = build_laplacian(g.graph);
  const Index n_target = target_size(l.dim(), a.ratio, a.k);

  BaselineOptions opts;
  opts.k = a.k;
  opts.seed = a.seed;
  opts.eps_threshold = eps;
  Hierarchy h = run_method(l, *method, n_target, opts);
  h.meta().name = g.name;
  h.meta().n_vertices = g.graph.num_vertices();
  h.meta().n_edges = g.graph.num_edges();
  h.meta().extra["ratio"] = format_double(a.ratio);
  h.meta().extra["k"] = std::to_string(a.k);
  h.meta().extra["seed"] = std::to_string(a.seed);
  h.meta().extra["eps_threshold"] = format_double(eps);
  if (!a.out.empty()) save_hierarchy(h, a.out);

  out << "graph: " << g.name << " (N=" << l.dim() << ", M=" << g.graph.num_edges() << ")\n";
  out << "method: " << a.method << "  k: " << a.k << "  target: " << n_target << '\n';
  out << "levels: " << h.num_levels() << '\n';
  out << "sizes: " << l.dim();
  for (const auto& lv : h.levels()) out << " -> " << lv.size_out();
  out << '\n';
  out << "sigma:";
  for (const auto& lv : h.levels()) out << ' ' << (lv.sigma ? format_double(*lv.sigma) : "-");
  out << '\n';
  const auto bound = h.eps_bound();
  out << "eps bound: " << (bound ? format_double(*bound) : "-") << '\n';
  out << "shortfall: " << (h.shortfall ? "yes" : "no") << "  stalled: " << (h.stalled ? "yes" : "no") << '\n';
  return kExitOk;
}

struct EvalArgs {
  std::vector<std::string> inputs;
  std::string hierarchy;
  std::string config;
  std::vector<std::string> methods;
  std::vector<double> ratios;
  std::vector<Index> ks;
  std::string eps;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  bool timing = false;
  bool strict = false;
  bool seed_set = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  std::vector<ResultRow> rows;
  std::string format = a.format.empty() ? "csv" : a.format;
  std::string path = a.out;
  bool timing = a.timing;

  if (!a.hierarchy.empty()) {
    if (a.inputs.size() != 1) throw ConfigError("--hierarchy needs exactly one --input");
    if (a.ks.size() > 1) throw ConfigError("--hierarchy takes a single k");
    const GraphInput g = resolve_graph(a.inputs.front());
    const Laplacian l = build_laplacian(g.graph);
    const Hierarchy h = load_hierarchy(a.hierarchy, l);
    const Index k = a.ks.empty() ? 10 : a.ks.front();
    if (k < 1 || k > h.coarsest().dim()) {
      throw InfeasibleTarget("k = " + std::to_string(k) + " does not fit the coarse size " +
                             std::to_string(h.coarsest().dim()));
    }
    const auto t0 = std::chrono::steady_clock::now();
    const EvalReport rep = evaluate(h, k);
    const auto t1 = std::chrono::steady_clock::now();
    ResultRow r;
    r.graph = g.name;
    r.method = h.num_levels() ? h.levels().front().method : "none";
    r.ratio = 1.0 - static_cast<double>(h.coarsest().dim()) / static_cast<double>(l.dim());
    r.k = k;
    r.epsilon = rep.epsilon;
    r.eig_err = rep.eig_err;
    r.eig_err_norm = rep.eig_err_norm;
    r.sin_theta = rep.sin_theta;
    r.gamma1 = rep.gammas.gamma1;
    r.gamma2 = rep.gammas.gamma2;
    r.bounds_ok = rep.bounds_ok;
    r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(r);
  } else {
    ExperimentConfig c;
    if (!a.config.empty()) c = load_config(a.config);
    if (!a.inputs.empty()) c.graphs = a.inputs;
    if (!a.methods.empty()) c.methods = parse_methods(a.methods);
    if (!a.ratios.empty()) c.ratios = a.ratios;
    if (!a.ks.empty()) c.ks = a.ks;
    if (!a.eps.empty()) c.eps_threshold = parse_threshold(a.eps);
    if (a.seed_set) c.seed = a.seed;
    if (!a.out.empty()) c.output = a.out;
    if (!a.format.empty()) c.format = a.format;
    c.timing = c.timing || a.timing;
    if (c.methods.empty()) c.methods = {Method::local_var_edge};
    if (c.ks.empty()) c.ks = {10};
    validate(c);
    std::vector<GraphInput> graphs;
    for (const auto& spec : c.graphs) graphs.push_back(resolve_graph(spec));
    rows = run_grid(c, graphs, thread_count());
    format = c.format;
    path = c.output;
    timing = c.timing;
  }
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");

  emit(path, out, [&](std::ostream& o) {
    if (format == "json") {
      write_json(o, rows, timing);
    } else {
      write_csv(o, rows, timing);
    }
  });
  if (a.strict) {
    for (const auto& r : rows) {
      if (!r.bounds_ok) throw BoundsFailed("bound check failed for " + r.graph + " / " + r.method);
    }
  }
  return kExitOk;
}

struct TableArgs {
  std::string input;
  std::string out;
  TableOptions opts;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.input);
  if (!in) throw std::ios_base::failure("cannot open " + a.input);
  const auto rows = read_csv(in);
  emit(a.out, out, [&](std::ostream& o) { write_table(o, err, rows, a.opts); });
  return kExitOk;
}

struct BenchArgs {
  BenchOptions opts;
  std::vector<std::string> methods;
  std::string out;
};

int cmd_bench(BenchArgs a, std::ostream& out) {
  if (!a.methods.empty()) a.opts.methods = parse_methods(a.methods);
  const auto rows = run_bench(a.opts);
  emit(a.out, out, [&](std::ostream& o) { write_bench_csv(o, rows); });
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrum-preserving graph coarsening"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  CoarsenArgs ca;
  auto* coarsen = app.add_subcommand("coarsen", "Coarsen one graph and write the hierarchy as JSON");
  coarsen->add_option("--input", ca.input, "Graph file (.mtx or edge list) or generator spec")->required();
  coarsen->add_option("--method", ca.method, "Coarsening method");
  coarsen->add_option("--ratio", ca.ratio, "Reduction ratio r = 1 - n/N");
  coarsen->add_option("--k", ca.k, "Number of eigenvectors to preserve");
  coarsen->add_option("--seed", ca.seed, "Seed for test vectors and eigensolver");
  coarsen->add_option("--eps-threshold", ca.eps, "Stop once the eps bound would exceed this (or inf)");
  coarsen->add_option("--out", ca.out, "Hierarchy JSON output path");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Measure a hierarchy, or run a methods x ratios x k grid");
  eval->add_option("--input", ea.inputs, "Graph file or generator spec; repeat for several graphs");
  eval->add_option("--hierarchy", ea.hierarchy, "Evaluate this hierarchy JSON instead of coarsening");
  eval->add_option("--config", ea.config, "JSON experiment config; flags override its values");
  eval->add_option("--methods", ea.methods, "Comma-separated methods")->delimiter(',');
  eval->add_option("--ratios", ea.ratios, "Comma-separated reduction ratios")->delimiter(',');
  eval->add_option("--ks,--k", ea.ks, "Comma-separated subspace sizes")->delimiter(',');
  eval->add_option("--eps-threshold", ea.eps, "Eps threshold for local variation (or inf)");
  auto* seed_opt = eval->add_option("--seed", ea.seed, "Seed");
  eval->add_option("--out", ea.out, "Output path (default stdout)");
  eval->add_option("--format", ea.format, "csv or json");
  eval->add_flag("--timing", ea.timing, "Fill the wall_ms column");
  eval->add_flag("--strict", ea.strict, "Exit with code 3 when a bound check fails");

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Pivot a results CSV to graph x ratio rows and method columns");
  table->add_option("--input", ta.input, "Results CSV from eval")->required();
  table->add_option("--metric", ta.opts.metric, "epsilon, eig_err, eig_err_norm, sin_theta, gamma1, gamma2 or wall_ms");
  table->add_option("--format", ta.opts.format, "text or csv");
  table->add_option("--out", ta.out, "Output path (default stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time methods on random regular graphs of doubling size");
  bench->add_option("--methods", ba.methods, "Comma-separated methods")->delimiter(',');
  bench->add_option("--min-exp", ba.opts.min_exp, "Smallest size is 2^min-exp edges");
  bench->add_option("--max-exp", ba.opts.max_exp, "Largest size is 2^max-exp edges");
  bench->add_option("--degree", ba.opts.degree, "Vertex degree");
  bench->add_option("--reps", ba.opts.reps, "Repetitions per size");
  bench->add_option("--cap", ba.opts.cap_s, "Time budget per size in seconds");
  bench->add_option("--k", ba.opts.k, "Number of eigenvectors to preserve");
  bench->add_option("--ratio", ba.opts.ratio, "Reduction ratio");
  bench->add_option("--seed", ba.opts.seed, "Graph and method seed");
  bench->add_option("--out", ba.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  ea.seed_set = seed_opt->count() > 0;

  try {
    if (coarsen->parsed()) return cmd_coarsen(ca, out);
    if (eval->parsed()) return cmd_eval(ea, out);
    if (table->parsed()) return cmd_table(ta, out, err);
    if (bench->parsed()) return cmd_bench(ba, out);
  } catch (const InfeasibleTarget& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const BoundsFailed& e) {
    err << "error: " << e.what() << '\n';
    return kExitBounds;
  } catch (const EigensolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCompute;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitInput;
}

}  // namespace coarsen::tools
