#include "coarsen/partition.hpp"

#include "coarsen/errors.hpp"

#include <algorithm>
#include <string>

namespace coarsen {

namespace {

void check_dim(Index got, Index want, const char* what) {
  if (got != want) {
    throw DimensionMismatchError(std::string(what) + ": expected dimension " + std::to_string(want) + ", got " +
                                 std::to_string(got));
  }
}

}  // namespace

Partition::Partition(Index size_in, std::vector<std::vector<Index>> sets) : sets_(std::move(sets)) {
  if (size_in < 0) throw InvalidPartitionError("negative level size");
  owner_.assign(static_cast<std::size_t>(size_in), -1);
  for (std::size_t r = 0; r < sets_.size(); ++r) {
    auto& s = sets_[r];
    if (s.empty()) throw InvalidPartitionError("empty contraction set " + std::to_string(r));
    std::sort(s.begin(), s.end());
    for (const Index v : s) {
      if (v < 0 || v >= size_in) throw InvalidPartitionError("vertex " + std::to_string(v) + " out of range");
      auto& o = owner_[static_cast<std::size_t>(v)];
      if (o >= 0) throw InvalidPartitionError("vertex " + std::to_string(v) + " appears in two sets");
      o = static_cast<Index>(r);
    }
  }
  for (Index v = 0; v < size_in; ++v) {
    if (owner_[static_cast<std::size_t>(v)] < 0) {
      throw InvalidPartitionError("vertex " + std::to_string(v) + " not covered");
    }
  }
}

Partition Partition::identity(Index n) {
  std::vector<std::vector<Index>> sets(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) sets[static_cast<std::size_t>(v)] = {v};
  return Partition(n, std::move(sets));
}

void require_connected_sets(const Laplacian& l, const Partition& p) {
  check_dim(p.size_in(), l.dim(), "partition");
  for (Index r = 0; r < p.size_out(); ++r) {
    if (p.set_size(r) > 1 && !induces_connected_subgraph(l, p.set(r))) {
      throw DisconnectedSetError("contraction set " + std::to_string(r) + " is not connected");
    }
  }
}

Vector project(const Partition& p, const Vector& x) {
  check_dim(x.size(), p.size_in(), "project");
  Vector out(p.size_out());
  for (Index r = 0; r < p.size_out(); ++r) {
    double s = 0.0;
    for (const Index v : p.set(r)) s += x(v);
    out(r) = s / static_cast<double>(p.set_size(r));
  }
  return out;
}

Matrix project(const Partition& p, const Matrix& x) {
  check_dim(x.rows(), p.size_in(), "project");
  Matrix out = Matrix::Zero(p.size_out(), x.cols());
  for (Index r = 0; r < p.size_out(); ++r) {
    for (const Index v : p.set(r)) out.row(r) += x.row(v);
    out.row(r) /= static_cast<double>(p.set_size(r));
  }
  return out;
}

Vector lift(const Partition& p, const Vector& xc) {
  check_dim(xc.size(), p.size_out(), "lift");
  Vector out(p.size_in());
  for (Index v = 0; v < p.size_in(); ++v) out(v) = xc(p.owner(v));
  return out;
}

Matrix lift(const Partition& p, const Matrix& xc) {
  check_dim(xc.rows(), p.size_out(), "lift");
  Matrix out(p.size_in(), xc.cols());
  for (Index v = 0; v < p.size_in(); ++v) out.row(v) = xc.row(p.owner(v));
  return out;
}

Vector pi(const Partition& p, const Vector& x) { return lift(p, project(p, x)); }

Vector pi_comp(const Partition& p, const Vector& x) { return x - pi(p, x); }

SparseMatrix coarsening_matrix(const Partition& p) {
  using Triplet = Eigen::Triplet<double, SparseMatrix::StorageIndex>;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(p.size_in()));
  for (Index v = 0; v < p.size_in(); ++v) {
    const Index r = p.owner(v);
    t.emplace_back(r, v, 1.0 / static_cast<double>(p.set_size(r)));
  }
  SparseMatrix m(p.size_out(), p.size_in());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix coarsening_pinv(const Partition& p) {
  using Triplet = Eigen::Triplet<double, SparseMatrix::StorageIndex>;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(p.size_in()));
  for (Index v = 0; v < p.size_in(); ++v) t.emplace_back(v, p.owner(v), 1.0);
  SparseMatrix m(p.size_in(), p.size_out());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Matrix dense_coarsening_matrix(const Partition& p) {
  if (p.size_in() > kDenseLimit) throw SizeGuardError("dense coarsening matrix above size limit");
  return Matrix(coarsening_matrix(p));
}

Matrix dense_coarsening_pinv(const Partition& p) {
  if (p.size_in() > kDenseLimit) throw SizeGuardError("dense coarsening pseudo-inverse above size limit");
  return Matrix(coarsening_pinv(p));
}

Laplacian coarsen_laplacian(const Laplacian& l, const Partition& p) {
  require_connected_sets(l, p);
  std::vector<Laplacian::WeightEntry> w;
  w.reserve(static_cast<std::size_t>(l.matrix().nonZeros() / 2));
  for (Index c = 0; c < l.dim(); ++c) {
    l.for_each_neighbor(c, [&](Index j, double wij) {
      if (j < c) return;
      const Index a = p.owner(c), b = p.owner(j);
      if (a != b) w.push_back({a, b, wij});
    });
  }
  return Laplacian::assemble(p.size_out(), w);
}

}  // namespace coarsen
