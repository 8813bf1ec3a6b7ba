#pragma once

#include "coarsen/eigensolver.hpp"
#include "coarsen/graph.hpp"
#include "coarsen/hierarchy.hpp"
#include "coarsen/partition.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace coarsen {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative cut-off below which Gram eigenvalues count as zero.
inline constexpr double kPseudoSqrtThreshold = 1e-10;

struct SubspaceBasis {
  Matrix b;
  Matrix a;
  Index k() const noexcept { return a.cols(); }
};

/// Symmetric PSD matrix function G^{+1/2} (inverse = true) or G^{1/2};
/// eigenvalues below kPseudoSqrtThreshold * lambda_max are dropped.
Matrix pseudo_sqrt(const Matrix& gram, bool inverse);

/// B_0 = A_0 = U_k Lambda_k^{+1/2}; null-space columns are zero.
SubspaceBasis initial_basis(const Laplacian& l, Index k, const EigenOptions& opts = {});
/// Basis for an arbitrary subspace range(V): A_0 = V (V^T L^+ V)^{1/2}, which
/// has the same A A^T as V V^T L^{+1/2}. Dense, size-guarded.
SubspaceBasis explicit_basis(const Laplacian& l, const Matrix& v);
/// B' = P B, A' = B' (B'^T L' B')^{+1/2}.
SubspaceBasis advance_basis(const SubspaceBasis& b, const Partition& p, const Laplacian& l_next);

/// Laplacian of the graph keeping edges inside C at their weight, doubling
/// edges that leave C and dropping everything else.
Laplacian local_laplacian(const Laplacian& l, std::span<const Index> c);
/// x - mean over C on C, zero elsewhere.
Vector local_projection_comp(std::span<const Index> c, const Vector& x);

/// ||Pi_C^perp A||^2_{L_C} / (|C| - 1), evaluated on the |C| x |C| block of
/// L_C. Reuses an O(N) scratch map between calls.
class LocalVariationCost {
 public:
  LocalVariationCost(const Laplacian& l, const Matrix& a);
  double operator()(std::span<const Index> c);

 private:
  const Laplacian* l_;
  const Matrix* a_;
  std::vector<Index> pos_;
};

double local_variation_cost(std::span<const Index> c, const Matrix& a, const Laplacian& l);

enum class FamilyKind { edge, neighborhood };

struct CandidateSet {
  std::vector<Index> members;
  double cost = 0.0;
};

using CostFunction = std::function<double(std::span<const Index>)>;

/// Min-heap on (cost, members) with lexicographic tie-break.
class CandidateFamily {
 public:
  void push(CandidateSet c) { heap_.push(std::move(c)); }
  CandidateSet pop();
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }

 private:
  struct Greater {
    bool operator()(const CandidateSet& x, const CandidateSet& y) const {
      if (x.cost != y.cost) return x.cost > y.cost;
      return x.members > y.members;
    }
  };
  std::priority_queue<CandidateSet, std::vector<CandidateSet>, Greater> heap_;
};

/// Edge family: {i, j} per edge. Neighborhood family: closed neighborhood of
/// every non-isolated vertex, duplicates removed.
std::vector<std::vector<Index>> candidate_sets(const Laplacian& l, FamilyKind kind);
CandidateFamily build_family(const Laplacian& l, FamilyKind kind, const CostFunction& cost);

struct LevelResult {
  Partition partition;
  Laplacian laplacian;
  double sigma = 0.0;
};

/// Greedy single-level contraction. Candidates are popped by increasing cost;
/// a fully unmarked candidate is accepted while the accumulated sigma stays
/// within `sigma_threshold`, and is dropped otherwise; a candidate touching
/// marked vertices loses them and its connected remainders of size >= 2 are
/// re-costed and pushed back. Stops when the family is empty, the level
/// reaches `n_target` or sigma exceeds the threshold. Sets are ordered by
/// smallest member.
LevelResult coarsen_level(const Laplacian& l, FamilyKind kind, const CostFunction& cost, double sigma_threshold,
                          Index n_target);
LevelResult coarsen_level(const Laplacian& l, const SubspaceBasis& basis, double sigma_threshold, Index n_target,
                          FamilyKind kind);

struct SubspaceSpec {
  /// Preserve the first k eigenvectors of L ...
  Index k = 0;
  /// ... or the columns of an explicit basis when non-empty.
  Matrix v;
};

std::string method_name(FamilyKind kind);

/// Multi-level loop: contracts while the size is above `n_target` and the
/// accumulated eps is below `eps_threshold`; level l gets the budget
/// (1 + eps') / (1 + eps_{l-1}) - 1. A level without contraction stops the
/// loop and sets Hierarchy::stalled.
Hierarchy coarsen_multilevel(const Laplacian& l, const SubspaceSpec& subspace, double eps_threshold, Index n_target,
                             FamilyKind kind, const EigenOptions& opts = {});

}  // namespace coarsen
