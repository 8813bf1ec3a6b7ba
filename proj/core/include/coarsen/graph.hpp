#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <span>
#include <vector>

namespace coarsen {

using Index = std::int64_t;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Dense materialization of any operator is refused above this dimension.
inline constexpr Index kDenseLimit = 2000;

struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph with strictly positive edge weights.
///
/// Edges are stored canonically with i < j and sorted lexicographically.
/// Construction rejects self-loops, duplicate pairs, ids outside
/// [0, n_vertices) and non-positive or non-finite weights.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(Index n_vertices, std::vector<Edge> edges);

  Index num_vertices() const noexcept { return n_; }
  Index num_edges() const noexcept { return static_cast<Index>(edges_.size()); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Vertices without any incident edge.
  std::vector<Index> isolated_vertices() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
};

/// Combinatorial Laplacian stored as a symmetric sparse matrix (both triangles).
///
/// Instances created through `assemble` have every diagonal entry equal to
/// the sum of the row's off-diagonal weights accumulated in storage order,
/// so `row_sums()` is exactly zero.
class Laplacian {
 public:
  struct WeightEntry {
    Index i;
    Index j;
    double w;
  };

  Laplacian() = default;

  /// Wraps an existing symmetric matrix without re-deriving the diagonal.
  explicit Laplacian(SparseMatrix m);

  /// Builds the Laplacian of the weighted adjacency given by `weights`.
  /// Each entry contributes w to both (i,j) and (j,i); repeated pairs are
  /// summed. Entries with i == j are ignored.
  static Laplacian assemble(Index dim, std::span<const WeightEntry> weights);

  Index dim() const noexcept { return static_cast<Index>(m_.rows()); }
  const SparseMatrix& matrix() const noexcept { return m_; }
  Index num_edges() const;

  double degree(Index i) const { return m_.coeff(i, i); }
  Vector degrees() const;

  Vector apply(const Vector& x) const { return m_ * x; }
  Matrix apply(const Matrix& x) const { return m_ * x; }

  /// x^T L x.
  double quadratic_form(const Vector& x) const;

  /// Off-diagonal entries of each row summed in storage order, then the
  /// diagonal added last.
  Vector row_sums() const;

  /// Calls f(j, w) for every neighbour j of vertex i with edge weight w > 0.
  template <class F>
  void for_each_neighbor(Index i, F&& f) const {
    for (SparseMatrix::InnerIterator it(m_, i); it; ++it) {
      if (it.row() != i && it.value() != 0.0) f(static_cast<Index>(it.row()), -it.value());
    }
  }

  WeightedGraph to_graph() const;
  Matrix dense() const;

 private:
  SparseMatrix m_;
};

/// Incidence factor S with S^T S = L; one row per edge (+sqrt(w) at i, -sqrt(w) at j).
struct IncidenceMatrix {
  SparseMatrix s;
};

Laplacian build_laplacian(const WeightedGraph& g);
IncidenceMatrix build_incidence(const WeightedGraph& g);

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
std::vector<std::vector<Index>> connected_components(const WeightedGraph& g);
std::vector<std::vector<Index>> connected_components(const Laplacian& l);

/// True when the subgraph induced by `members` (sorted) is connected.
bool induces_connected_subgraph(const Laplacian& l, std::span<const Index> members);

}  // namespace coarsen
