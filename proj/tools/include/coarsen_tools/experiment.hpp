#pragma once

#include "coarsen/baselines.hpp"
#include "coarsen/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarsen::tools {

/// Requested size cannot be reached (r outside [0, 1), n < 1 or k > n).
class InfeasibleTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad flags or config values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphInput {
  std::string name;
  WeightedGraph graph;
};

/// A file path, or a generator spec "regular:n=..,d=..,seed=.." or
/// "er:n=..,p=..,seed=..". Files are named by their stem.
GraphInput resolve_graph(const std::string& spec);

/// n = round((1 - r) N). Throws InfeasibleTarget unless 0 <= r < 1, n >= 1
/// and k <= n.
Index target_size(Index n_vertices, double ratio, Index k);

struct ExperimentConfig {
  std::vector<std::string> graphs;
  std::vector<Method> methods;
  std::vector<double> ratios;
  std::vector<Index> ks;
  double eps_threshold = kInfinity;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "csv";
  bool timing = false;
};

/// Reads the JSON form of ExperimentConfig; "eps_threshold" may be a number,
/// "inf" or null.
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& c);

struct ResultRow {
  std::string graph;
  std::string method;
  double ratio = 0.0;
  Index k = 0;
  double epsilon = 0.0;
  double eig_err = 0.0;
  double sin_theta = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  bool bounds_ok = true;
  /// Coarsening time; only written when timing is requested.
  double wall_ms = 0.0;
  /// Eigenvalue error against the normalized coarse operator C L C^T.
  double eig_err_norm = 0.0;
};

/// Worker count: COARSEN_THREADS if set to a positive integer, else the
/// hardware concurrency.
int thread_count();

/// Runs every graph x method x ratio x k cell. Cells are independent and the
/// result order is fixed by the config, whatever the thread count.
std::vector<ResultRow> run_grid(const ExperimentConfig& c, const std::vector<GraphInput>& graphs, int threads);

inline constexpr const char* kResultsSchema = "# coarsen results v1";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing);
void write_json(std::ostream& out, const std::vector<ResultRow>& rows, bool timing);
/// Reads what write_csv produced. Unknown columns are ignored; a missing
/// required column is a ConfigError.
std::vector<ResultRow> read_csv(std::istream& in);

/// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(const std::string& s);

/// 17 significant digits; "nan" and "inf" spelled out.
std::string format_double(double v);

}  // namespace coarsen::tools
