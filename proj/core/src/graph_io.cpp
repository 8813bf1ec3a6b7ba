#include "coarsen/graph_io.hpp"

#include "coarsen/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace coarsen {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

long long parse_id(const std::string& tok, long line_no) {
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0') throw ParseError("invalid vertex id '" + tok + "'", line_no);
  return v;
}

double parse_weight(const std::string& tok, long line_no) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') throw ParseError("invalid weight '" + tok + "'", line_no);
  if (!std::isfinite(v) || v <= 0.0) throw ParseError("non-positive edge weight " + tok, line_no);
  return v;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

struct Oriented {
  double w = 0.0;
  long line = 0;
};

LoadedGraph finish(Index n, std::vector<Edge> edges, std::vector<long long> ids) {
  LoadedGraph out{WeightedGraph(n, std::move(edges)), std::move(ids), {}};
  out.isolated = out.graph.isolated_vertices();
  return out;
}

LoadedGraph read_matrix_market(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market file", 0);
  ++line_no;
  const auto head = tokens(lower(line));
  if (head.size() < 5 || head[0] != "%%matrixmarket" || head[1] != "matrix") {
    throw ParseError("missing %%MatrixMarket matrix header", line_no);
  }
  if (head[2] != "coordinate") throw ParseError("only coordinate Matrix Market files are supported", line_no);
  const std::string field = head[3];
  const std::string symmetry = head[4];
  if (field != "real" && field != "integer" && field != "pattern") {
    throw ParseError("unsupported Matrix Market field '" + field + "'", line_no);
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw ParseError("unsupported Matrix Market symmetry '" + symmetry + "'", line_no);
  }
  const bool pattern = field == "pattern";
  const bool general = symmetry == "general";

  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    const auto t = tokens(line);
    if (t.size() != 3) throw ParseError("malformed size line", line_no);
    rows = parse_id(t[0], line_no);
    cols = parse_id(t[1], line_no);
    nnz = parse_id(t[2], line_no);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", line_no);
  if (rows != cols) throw ParseError("adjacency matrix must be square", line_no);

  // Oriented (row, col) sums; symmetric files fold to row > col.
  std::map<std::pair<Index, Index>, Oriented> entries;
  long long seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    const auto t = tokens(line);
    if (t.size() != (pattern ? 2u : 3u)) throw ParseError("malformed entry", line_no);
    const long long r = parse_id(t[0], line_no);
    const long long c = parse_id(t[1], line_no);
    if (r < 1 || c < 1 || r > rows || c > cols) throw ParseError("entry index out of range", line_no);
    const double w = pattern ? 1.0 : parse_weight(t[2], line_no);
    ++seen;
    if (r == c) continue;  // diagonal carries no edge information
    Index a = r - 1, b = c - 1;
    if (!general && a < b) std::swap(a, b);
    auto& slot = entries[{a, b}];
    slot.w += w;
    slot.line = line_no;
  }
  if (seen != nnz) {
    throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen), line_no);
  }

  std::vector<Edge> edges;
  for (const auto& [key, val] : entries) {
    const auto [a, b] = key;
    if (!general) {
      edges.push_back({b, a, val.w});
      continue;
    }
    const auto rev = entries.find({b, a});
    if (rev == entries.end()) {
      throw ParseError("general matrix is not symmetric: missing reverse of (" + std::to_string(a + 1) +
                           "," + std::to_string(b + 1) + ")",
                       val.line);
    }
    if (rev->second.w != val.w) {
      throw ParseError("asymmetric weights for (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")",
                       std::max(val.line, rev->second.line));
    }
    if (a < b) edges.push_back({a, b, val.w});
  }
  std::vector<long long> ids(static_cast<std::size_t>(rows));
  for (long long v = 0; v < rows; ++v) ids[static_cast<std::size_t>(v)] = v + 1;
  return finish(rows, std::move(edges), std::move(ids));
}

LoadedGraph read_edge_list(std::istream& in) {
  struct Raw {
    long long a, b;
    double w;
    long line;
  };
  std::vector<Raw> raw;
  long long declared_n = -1;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      const auto t = tokens(line.substr(hash + 1));
      if (t.size() == 2 && t[0] == "vertices:") declared_n = parse_id(t[1], line_no);
      line.erase(hash);
    }
    const auto t = tokens(line);
    if (t.empty()) continue;
    if (t.size() != 2 && t.size() != 3) throw ParseError("expected 'src dst [weight]'", line_no);
    const long long a = parse_id(t[0], line_no);
    const long long b = parse_id(t[1], line_no);
    if (a < 0 || b < 0) throw ParseError("negative vertex id", line_no);
    if (a == b) throw ParseError("self-loop", line_no);
    const double w = t.size() == 3 ? parse_weight(t[2], line_no) : 1.0;
    raw.push_back({a, b, w, line_no});
  }

  std::vector<long long> ids;
  if (declared_n >= 0) {
    for (const auto& r : raw) {
      if (r.a >= declared_n || r.b >= declared_n) throw ParseError("vertex id beyond declared count", r.line);
    }
    ids.resize(static_cast<std::size_t>(declared_n));
    for (long long v = 0; v < declared_n; ++v) ids[static_cast<std::size_t>(v)] = v;
  } else {
    for (const auto& r : raw) {
      ids.push_back(r.a);
      ids.push_back(r.b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  auto dense = [&](long long id) {
    return static_cast<Index>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::map<std::pair<Index, Index>, Raw> oriented;
  for (const auto& r : raw) {
    const std::pair<Index, Index> key{dense(r.a), dense(r.b)};
    if (!oriented.emplace(key, r).second) throw ParseError("duplicate edge", r.line);
  }
  std::vector<Edge> edges;
  for (const auto& [key, r] : oriented) {
    const auto [a, b] = key;
    const auto rev = oriented.find({b, a});
    if (rev != oriented.end()) {
      if (rev->second.w != r.w) throw ParseError("asymmetric weights", std::max(r.line, rev->second.line));
      if (a > b) continue;
    }
    edges.push_back({a, b, r.w});
  }
  const auto n = static_cast<Index>(ids.size());
  return finish(n, std::move(edges), std::move(ids));
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GraphFormat guess_format(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".mtx" ? GraphFormat::matrix_market : GraphFormat::edge_list;
}

LoadedGraph read_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::matrix_market ? read_matrix_market(in) : read_edge_list(in);
}

LoadedGraph load_graph(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return read_graph(in, format);
}

LoadedGraph load_graph(const std::filesystem::path& path) { return load_graph(path, guess_format(path)); }

void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format) {
  if (format == GraphFormat::matrix_market) {
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << g.num_vertices() << ' ' << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) out << e.j + 1 << ' ' << e.i + 1 << ' ' << fmt17(e.w) << '\n';
  } else {
    out << "# vertices: " << g.num_vertices() << '\n';
    for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << fmt17(e.w) << '\n';
  }
}

void save_graph(const std::filesystem::path& path, const WeightedGraph& g, GraphFormat format) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string(), 0);
  write_graph(out, g, format);
}

}  // namespace coarsen
