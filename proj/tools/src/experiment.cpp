#include "coarsen_tools/experiment.hpp"

#include "coarsen/graph_io.hpp"
#include "coarsen/metrics.hpp"
#include "coarsen_tools/generators.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace coarsen::tools {

namespace {

std::map<std::string, std::string> spec_fields(const std::string& body, const std::string& spec) {
  std::map<std::string, std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("bad generator field '" + item + "' in " + spec);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

template <class T>
T field(const std::map<std::string, std::string>& f, const std::string& key, const std::string& spec,
        std::optional<T> fallback = std::nullopt) {
  const auto it = f.find(key);
  if (it == f.end()) {
    if (fallback) return *fallback;
    throw ConfigError("generator spec " + spec + " needs " + key);
  }
  std::istringstream in(it->second);
  T v{};
  if (!(in >> v) || !in.eof()) throw ConfigError("bad value for " + key + " in " + spec);
  return v;
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ConfigError("unterminated quote in CSV line");
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ConfigError("bad number '" + s + "'");
  return v;
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

const std::vector<std::string> kColumns = {"graph",   "method",    "ratio",  "k",      "epsilon",   "eig_err",
                                           "sin_theta", "gamma1", "gamma2", "bounds_ok", "wall_ms", "eig_err_norm"};

}  // namespace

GraphInput resolve_graph(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? "" : spec.substr(0, colon);
  if (kind == "regular") {
    const auto f = spec_fields(spec.substr(colon + 1), spec);
    return {spec, random_regular(field<Index>(f, "n", spec), field<Index>(f, "d", spec),
                                 field<std::uint64_t>(f, "seed", spec, std::uint64_t{0}))};
  }
  if (kind == "er") {
    const auto f = spec_fields(spec.substr(colon + 1), spec);
    return {spec, erdos_renyi(field<Index>(f, "n", spec), field<double>(f, "p", spec),
                              field<std::uint64_t>(f, "seed", spec, std::uint64_t{0}))};
  }
  return {std::filesystem::path(spec).stem().string(), load_graph(spec).graph};
}

Index target_size(Index n_vertices, double ratio, Index k) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw InfeasibleTarget("ratio must lie in [0, 1)");
  const auto n = static_cast<Index>(std::llround((1.0 - ratio) * static_cast<double>(n_vertices)));
  if (n < 1) throw InfeasibleTarget("ratio leaves no vertex");
  if (k > n) {
    throw InfeasibleTarget("k = " + std::to_string(k) + " exceeds the target size " + std::to_string(n));
  }
  return n;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config " + path.string());
  ExperimentConfig c;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "graphs") {
        c.graphs = v.get<std::vector<std::string>>();
      } else if (key == "methods") {
        for (const auto& name : v.get<std::vector<std::string>>()) {
          const auto m = parse_method(name);
          if (!m) throw ConfigError("unknown method " + name);
          c.methods.push_back(*m);
        }
      } else if (key == "ratios") {
        c.ratios = v.get<std::vector<double>>();
      } else if (key == "ks") {
        c.ks = v.get<std::vector<Index>>();
      } else if (key == "eps_threshold") {
        if (v.is_null() || (v.is_string() && v.get<std::string>() == "inf")) {
          c.eps_threshold = kInfinity;
        } else {
          c.eps_threshold = v.get<double>();
        }
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "output") {
        c.output = v.get<std::string>();
      } else if (key == "format") {
        c.format = v.get<std::string>();
      } else if (key == "timing") {
        c.timing = v.get<bool>();
      } else {
        throw ConfigError("unknown config key " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  if (c.graphs.empty()) throw ConfigError("no graphs given");
  if (c.methods.empty()) throw ConfigError("no methods given");
  if (c.ratios.empty()) throw ConfigError("no ratios given");
  if (c.ks.empty()) throw ConfigError("no k values given");
  for (std::size_t i = 1; i < c.ratios.size(); ++i) {
    if (!(c.ratios[i] > c.ratios[i - 1])) throw ConfigError("ratios must be strictly increasing");
  }
  for (const Index k : c.ks) {
    if (k < 1) throw ConfigError("k must be positive");
  }
  if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
  if (std::isnan(c.eps_threshold) || c.eps_threshold < 0.0) throw ConfigError("eps threshold must be >= 0");
}

int thread_count() {
  if (const char* env = std::getenv("COARSEN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ResultRow> run_grid(const ExperimentConfig& c, const std::vector<GraphInput>& graphs, int threads) {
  struct Cell {
    std::size_t graph;
    Method method;
    double ratio;
    Index k;
    Index n_target;
  };
  std::vector<Laplacian> laplacians;
  for (const auto& g : graphs) laplacians.push_back(build_laplacian(g.graph));
  std::vector<Cell> cells;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (const Method m : c.methods) {
      for (const double r : c.ratios) {
        for (const Index k : c.ks) {
          cells.push_back({gi, m, r, k, target_size(laplacians[gi].dim(), r, k)});
        }
      }
    }
  }

  std::vector<ResultRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const Cell& cell = cells[i];
        BaselineOptions opts;
        opts.k = cell.k;
        opts.seed = c.seed;
        opts.eps_threshold = c.eps_threshold;
        const auto t0 = std::chrono::steady_clock::now();
        const Hierarchy h = run_method(laplacians[cell.graph], cell.method, cell.n_target, opts);
        const auto t1 = std::chrono::steady_clock::now();
        if (h.coarsest().dim() < cell.k) {
          // A large contraction set can overshoot the target.
          throw InfeasibleTarget(graphs[cell.graph].name + " / " + to_string(cell.method) + " / r=" +
                                 format_double(cell.ratio) + ": coarse size " + std::to_string(h.coarsest().dim()) +
                                 " is below k = " + std::to_string(cell.k));
        }
        const EvalReport rep = evaluate(h, cell.k);
        ResultRow& row = rows[i];
        row.graph = graphs[cell.graph].name;
        row.method = to_string(cell.method);
        row.ratio = cell.ratio;
        row.k = cell.k;
        row.epsilon = rep.epsilon;
        row.eig_err = rep.eig_err;
        row.eig_err_norm = rep.eig_err_norm;
        row.sin_theta = rep.sin_theta;
        row.gamma1 = rep.gammas.gamma1;
        row.gamma2 = rep.gammas.gamma2;
        row.bounds_ok = rep.bounds_ok;
        row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_workers = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing) {
  out << kResultsSchema << '\n';
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.graph) << ',' << csv_field(r.method) << ',' << format_double(r.ratio) << ',' << r.k << ','
        << format_double(r.epsilon) << ',' << format_double(r.eig_err) << ',' << format_double(r.sin_theta) << ','
        << format_double(r.gamma1) << ',' << format_double(r.gamma2) << ',' << (r.bounds_ok ? "true" : "false")
        << ',' << (timing ? format_double(r.wall_ms) : "") << ',' << format_double(r.eig_err_norm) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows, bool timing) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["graph"] = r.graph;
    j["method"] = r.method;
    j["ratio"] = r.ratio;
    j["k"] = r.k;
    j["epsilon"] = json_number(r.epsilon);
    j["eig_err"] = json_number(r.eig_err);
    j["sin_theta"] = json_number(r.sin_theta);
    j["gamma1"] = json_number(r.gamma1);
    j["gamma2"] = json_number(r.gamma2);
    j["bounds_ok"] = r.bounds_ok;
    j["eig_err_norm"] = json_number(r.eig_err_norm);
    j["wall_ms"] = timing ? json_number(r.wall_ms) : nlohmann::json(nullptr);
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  std::vector<ResultRow> rows;
  std::map<std::string, std::size_t> col;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (header.empty()) {
      header = fields;
      for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
      for (const char* need : {"graph", "method", "ratio", "k"}) {
        if (!col.count(need)) throw ConfigError(std::string("results CSV lacks column ") + need);
      }
      continue;
    }
    if (fields.size() != header.size()) throw ConfigError("results CSV row has the wrong number of fields");
    auto get = [&](const char* name) -> std::optional<std::string> {
      const auto it = col.find(name);
      if (it == col.end()) return std::nullopt;
      return fields[it->second];
    };
    auto num = [&](const char* name) {
      const auto s = get(name);
      return s && !s->empty() ? parse_double(*s) : std::numeric_limits<double>::quiet_NaN();
    };
    ResultRow r;
    r.graph = *get("graph");
    r.method = *get("method");
    r.ratio = parse_double(*get("ratio"));
    r.k = std::stoll(*get("k"));
    r.epsilon = num("epsilon");
    r.eig_err = num("eig_err");
    r.sin_theta = num("sin_theta");
    r.gamma1 = num("gamma1");
    r.gamma2 = num("gamma2");
    r.bounds_ok = get("bounds_ok").value_or("true") == "true";
    r.wall_ms = num("wall_ms");
    r.eig_err_norm = num("eig_err_norm");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace coarsen::tools
