#pragma once

#include "coarsen/graph.hpp"

#include <vector>

namespace coarsen {

/// Contraction sets of one level. Every vertex of [0, size_in) belongs to
/// exactly one set; singletons are stored explicitly. Members inside a set
/// are kept sorted, the order of sets is the order of coarse vertices.
class Partition {
 public:
  Partition() = default;
  Partition(Index size_in, std::vector<std::vector<Index>> sets);

  static Partition identity(Index n);

  Index size_in() const noexcept { return static_cast<Index>(owner_.size()); }
  Index size_out() const noexcept { return static_cast<Index>(sets_.size()); }
  const std::vector<std::vector<Index>>& sets() const noexcept { return sets_; }
  const std::vector<Index>& set(Index r) const { return sets_[static_cast<std::size_t>(r)]; }
  Index set_size(Index r) const { return static_cast<Index>(set(r).size()); }
  /// Coarse vertex that owns fine vertex v.
  Index owner(Index v) const { return owner_[static_cast<std::size_t>(v)]; }
  bool is_identity() const noexcept { return size_in() == size_out(); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.sets_ == b.sets_; }

 private:
  std::vector<std::vector<Index>> sets_;
  std::vector<Index> owner_;
};

/// Throws DisconnectedSetError when a non-singleton set does not induce a
/// connected subgraph of `l`, DimensionMismatchError on a size mismatch.
void require_connected_sets(const Laplacian& l, const Partition& p);

// Operator views of P (per-set means), P+ (copy to members), Pi = P+P and
// I - Pi. Matrices are applied column by column.
Vector project(const Partition& p, const Vector& x);
Matrix project(const Partition& p, const Matrix& x);
Vector lift(const Partition& p, const Vector& xc);
Matrix lift(const Partition& p, const Matrix& xc);
Vector pi(const Partition& p, const Vector& x);
Vector pi_comp(const Partition& p, const Vector& x);

SparseMatrix coarsening_matrix(const Partition& p);
SparseMatrix coarsening_pinv(const Partition& p);
Matrix dense_coarsening_matrix(const Partition& p);
Matrix dense_coarsening_pinv(const Partition& p);

/// Coarse Laplacian P+^T L P+: off-diagonal (r,q) is minus the total weight
/// between sets r and q. Rows sum to exactly zero.
Laplacian coarsen_laplacian(const Laplacian& l, const Partition& p);

}  // namespace coarsen
