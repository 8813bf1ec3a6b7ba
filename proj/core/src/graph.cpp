#include "coarsen/graph.hpp"

#include "coarsen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace coarsen {

WeightedGraph::WeightedGraph(Index n_vertices, std::vector<Edge> edges) : n_(n_vertices) {
  if (n_vertices < 0) throw InvalidGraphError("negative vertex count");
  for (auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_) {
      throw InvalidGraphError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                              ") references a vertex outside [0, " + std::to_string(n_) + ")");
    }
    if (e.i == e.j) throw InvalidGraphError("self-loop at vertex " + std::to_string(e.i));
    if (!std::isfinite(e.w) || e.w <= 0.0) {
      throw InvalidGraphError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                              ") has non-positive weight");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t t = 1; t < edges.size(); ++t) {
    if (edges[t].i == edges[t - 1].i && edges[t].j == edges[t - 1].j) {
      throw InvalidGraphError("duplicate edge (" + std::to_string(edges[t].i) + "," +
                              std::to_string(edges[t].j) + ")");
    }
  }
  edges_ = std::move(edges);
}

std::vector<Index> WeightedGraph::isolated_vertices() const {
  std::vector<char> touched(static_cast<std::size_t>(n_), 0);
  for (const auto& e : edges_) {
    touched[static_cast<std::size_t>(e.i)] = 1;
    touched[static_cast<std::size_t>(e.j)] = 1;
  }
  std::vector<Index> out;
  for (Index v = 0; v < n_; ++v) {
    if (!touched[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

Laplacian::Laplacian(SparseMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionMismatchError("Laplacian must be square");
  m_.makeCompressed();
}

Laplacian Laplacian::assemble(Index dim, std::span<const WeightEntry> weights) {
  using Triplet = Eigen::Triplet<double, SparseMatrix::StorageIndex>;
  std::vector<Triplet> adj;
  adj.reserve(2 * weights.size());
  for (const auto& e : weights) {
    if (e.i == e.j) continue;
    adj.emplace_back(e.i, e.j, e.w);
    adj.emplace_back(e.j, e.i, e.w);
  }
  SparseMatrix w(dim, dim);
  w.setFromTriplets(adj.begin(), adj.end());
  w.makeCompressed();

  // Diagonal first accumulated in the same order row_sums() will use.
  std::vector<Triplet> lap;
  lap.reserve(static_cast<std::size_t>(w.nonZeros() + dim));
  for (Index c = 0; c < dim; ++c) {
    double deg = 0.0;
    for (SparseMatrix::InnerIterator it(w, c); it; ++it) {
      deg += it.value();
      lap.emplace_back(it.row(), c, -it.value());
    }
    lap.emplace_back(c, c, deg);
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(lap.begin(), lap.end());
  return Laplacian(std::move(m));
}

Index Laplacian::num_edges() const {
  Index off = 0;
  for (Index c = 0; c < dim(); ++c) {
    for (SparseMatrix::InnerIterator it(m_, c); it; ++it) {
      if (it.row() != c && it.value() != 0.0) ++off;
    }
  }
  return off / 2;
}

Vector Laplacian::degrees() const { return m_.diagonal(); }

double Laplacian::quadratic_form(const Vector& x) const { return x.dot(m_ * x); }

Vector Laplacian::row_sums() const {
  Vector out(dim());
  for (Index c = 0; c < dim(); ++c) {
    double off = 0.0;
    double diag = 0.0;
    for (SparseMatrix::InnerIterator it(m_, c); it; ++it) {
      if (it.row() == c) {
        diag = it.value();
      } else {
        off += it.value();
      }
    }
    out(c) = off + diag;
  }
  return out;
}

WeightedGraph Laplacian::to_graph() const {
  std::vector<Edge> edges;
  for (Index c = 0; c < dim(); ++c) {
    for (SparseMatrix::InnerIterator it(m_, c); it; ++it) {
      if (it.row() < c && it.value() != 0.0) edges.push_back({it.row(), c, -it.value()});
    }
  }
  return WeightedGraph(dim(), std::move(edges));
}

Matrix Laplacian::dense() const {
  if (dim() > kDenseLimit) throw SizeGuardError("dense Laplacian above size limit");
  return Matrix(m_);
}

Laplacian build_laplacian(const WeightedGraph& g) {
  std::vector<Laplacian::WeightEntry> w;
  w.reserve(static_cast<std::size_t>(g.num_edges()));
  for (const auto& e : g.edges()) w.push_back({e.i, e.j, e.w});
  return Laplacian::assemble(g.num_vertices(), w);
}

IncidenceMatrix build_incidence(const WeightedGraph& g) {
  using Triplet = Eigen::Triplet<double, SparseMatrix::StorageIndex>;
  std::vector<Triplet> t;
  t.reserve(2 * static_cast<std::size_t>(g.num_edges()));
  Index row = 0;
  for (const auto& e : g.edges()) {
    const double s = std::sqrt(e.w);
    t.emplace_back(row, e.i, s);
    t.emplace_back(row, e.j, -s);
    ++row;
  }
  SparseMatrix s(g.num_edges(), g.num_vertices());
  s.setFromTriplets(t.begin(), t.end());
  return {std::move(s)};
}

namespace {

// Union-find over vertex ids.
class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
  }

 private:
  std::vector<Index> parent_;
};

std::vector<std::vector<Index>> collect(DisjointSets& ds, Index n) {
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Index>> out;
  for (Index v = 0; v < n; ++v) {
    const Index root = ds.find(v);
    auto& s = slot[static_cast<std::size_t>(root)];
    if (s < 0) {
      s = static_cast<Index>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(s)].push_back(v);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Index>> connected_components(const WeightedGraph& g) {
  DisjointSets ds(g.num_vertices());
  for (const auto& e : g.edges()) ds.unite(e.i, e.j);
  return collect(ds, g.num_vertices());
}

std::vector<std::vector<Index>> connected_components(const Laplacian& l) {
  DisjointSets ds(l.dim());
  for (Index v = 0; v < l.dim(); ++v) {
    l.for_each_neighbor(v, [&](Index u, double) { ds.unite(u, v); });
  }
  return collect(ds, l.dim());
}

bool induces_connected_subgraph(const Laplacian& l, std::span<const Index> members) {
  if (members.size() <= 1) return true;
  std::vector<char> seen(members.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    l.for_each_neighbor(members[a], [&](Index u, double) {
      auto pos = std::lower_bound(members.begin(), members.end(), u);
      if (pos == members.end() || *pos != u) return;
      const auto b = static_cast<std::size_t>(pos - members.begin());
      if (!seen[b]) {
        seen[b] = 1;
        ++reached;
        stack.push_back(b);
      }
    });
  }
  return reached == members.size();
}

}  // namespace coarsen
