#include "coarsen_tools/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <tuple>

namespace coarsen::tools {

namespace {

double metric_value(const ResultRow& r, const std::string& metric) {
  if (metric == "epsilon") return r.epsilon;
  if (metric == "eig_err") return r.eig_err;
  if (metric == "eig_err_norm") return r.eig_err_norm;
  if (metric == "sin_theta") return r.sin_theta;
  if (metric == "gamma1") return r.gamma1;
  if (metric == "gamma2") return r.gamma2;
  if (metric == "wall_ms") return r.wall_ms;
  throw ConfigError("unknown metric " + metric);
}

std::string short_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::size_t write_table(std::ostream& out, std::ostream& warn, const std::vector<ResultRow>& rows,
                        const TableOptions& opts) {
  if (opts.format != "text" && opts.format != "csv") throw ConfigError("table format must be text or csv");
  metric_value(ResultRow{}, opts.metric);

  std::vector<std::string> graphs, methods;
  auto remember = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  using Key = std::tuple<std::size_t, Index, double>;
  std::map<Key, std::map<std::string, double>> cells;
  for (const auto& r : rows) {
    remember(graphs, r.graph);
    remember(methods, r.method);
    const auto g = static_cast<std::size_t>(std::find(graphs.begin(), graphs.end(), r.graph) - graphs.begin());
    auto& line = cells[{g, r.k, r.ratio}];
    if (line.count(r.method)) {
      warn << "warning: duplicate cell graph=" << r.graph << " k=" << r.k << " ratio=" << format_double(r.ratio)
           << " method=" << r.method << "; keeping the first\n";
      continue;
    }
    line[r.method] = metric_value(r, opts.metric);
  }

  std::vector<std::vector<std::string>> table;
  table.push_back({"graph", "k", "ratio"});
  for (const auto& m : methods) table.back().push_back(m);
  std::size_t missing = 0;
  for (const auto& [key, line] : cells) {
    const auto& [g, k, ratio] = key;
    std::vector<std::string> t{graphs[g], std::to_string(k), opts.format == "csv" ? format_double(ratio)
                                                                                  : short_value(ratio)};
    for (const auto& m : methods) {
      const auto it = line.find(m);
      if (it == line.end()) {
        ++missing;
        warn << "warning: missing cell graph=" << graphs[g] << " k=" << k << " ratio=" << format_double(ratio)
             << " method=" << m << '\n';
        t.emplace_back(opts.format == "csv" ? "" : "--");
      } else {
        t.push_back(opts.format == "csv" ? format_double(it->second) : short_value(it->second));
      }
    }
    table.push_back(std::move(t));
  }

  if (opts.format == "csv") {
    out << "# coarsen table v1 metric=" << opts.metric << '\n';
    for (const auto& t : table) {
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << csv_field(t[i]);
      out << '\n';
    }
    return missing;
  }
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& t : table) {
    for (std::size_t i = 0; i < t.size(); ++i) width[i] = std::max(width[i], t[i].size());
  }
  out << "metric: " << opts.metric << '\n';
  for (const auto& t : table) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << "  ";
      const std::string pad(width[i] - t[i].size(), ' ');
      out << (i == 0 ? t[i] + pad : pad + t[i]);
    }
    out << '\n';
  }
  return missing;
}

}  // namespace coarsen::tools
