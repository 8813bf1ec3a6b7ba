#pragma once

#include "coarsen/graph.hpp"
#include "coarsen/partition.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace coarsen {

enum class LevelKind { consistent, kron };

struct HierarchyLevel {
  LevelKind kind = LevelKind::consistent;
  /// Contraction sets; empty for Kron levels.
  Partition partition;
  /// Retained vertices (sorted) of a Kron level; empty otherwise.
  std::vector<Index> keep;
  Laplacian laplacian;
  /// Variation cost of the level; absent for methods without one.
  std::optional<double> sigma;
  std::string method;

  Index size_in() const;
  Index size_out() const { return laplacian.dim(); }
};

struct GraphMeta {
  std::string name;
  Index n_vertices = 0;
  Index n_edges = 0;
  std::map<std::string, std::string> extra;
};

/// Base Laplacian plus a sequence of strictly shrinking levels.
class Hierarchy {
 public:
  Hierarchy() = default;
  explicit Hierarchy(Laplacian base, GraphMeta meta = {});

  const Laplacian& base() const noexcept { return base_; }
  const Laplacian& coarsest() const noexcept { return levels_.empty() ? base_ : levels_.back().laplacian; }
  std::span<const HierarchyLevel> levels() const noexcept { return levels_; }
  std::size_t num_levels() const noexcept { return levels_.size(); }
  const GraphMeta& meta() const noexcept { return meta_; }
  GraphMeta& meta() noexcept { return meta_; }

  /// Appends a consistent level; the coarse Laplacian is assembled here.
  void add_level(Partition p, std::optional<double> sigma, std::string method);
  /// Appends a consistent level with a precomputed coarse Laplacian.
  void add_level(Partition p, Laplacian coarse, std::optional<double> sigma, std::string method);
  void add_kron_level(std::vector<Index> keep, Laplacian reduced, std::string method);

  /// True when every level is a consistent contraction.
  bool consistent() const noexcept;

  /// prod(1 + sigma_l) - 1; absent if some level has no sigma.
  std::optional<double> eps_bound() const;

  /// The multi-level loop ended because a level made no progress.
  bool stalled = false;
  /// The final size is above the requested target.
  bool shortfall = false;
  Index target = -1;

 private:
  void push(HierarchyLevel level);

  Laplacian base_;
  GraphMeta meta_;
  std::vector<HierarchyLevel> levels_;
};

/// Composite map from base vertices to coarsest vertices. P of the whole
/// hierarchy has entry weight[i] at (owner[i], i); the composite P+ has a 1
/// at (i, owner[i]).
struct ComposedMap {
  std::vector<Index> owner;
  Vector weight;
  Index size_out = 0;
};

ComposedMap compose(const Hierarchy& h);
/// Base-vertex sets of each coarsest vertex.
Partition composed_partition(const Hierarchy& h);

Vector compose_project(const Hierarchy& h, const Vector& x);
Matrix compose_project(const Hierarchy& h, const Matrix& x);
Vector compose_lift(const Hierarchy& h, const Vector& xc);
Matrix compose_lift(const Hierarchy& h, const Matrix& xc);
Vector compose_pi_comp(const Hierarchy& h, const Vector& x);
Matrix compose_pi_comp(const Hierarchy& h, const Matrix& x);
Matrix dense_composed_matrix(const Hierarchy& h);

/// (x_c^T L_c x_c, xl^T L xl) with x_c = P x and xl = P+ x_c.
std::pair<double, double> quadratic_form_preservation_check(const Hierarchy& h, const Vector& x);

struct Gammas {
  /// Extreme eigenvalues of (P+)^T P+ for the composite P+, i.e. the smallest
  /// and largest number of base vertices behind one coarsest vertex. These
  /// are the interlacing constants of L_c = (P+)^T L P+.
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  /// Product-of-set-size envelope: bound1 <= gamma1, gamma2 <= bound2.
  double bound1 = 1.0;
  double bound2 = 1.0;
  /// Extreme eigenvalues of (P P^T)^{-1}. Equal to gamma for one level; for
  /// a composition P+ is no longer the pseudo-inverse of P, each diagonal
  /// entry drops to at most its set size and ppt2 can fall below gamma2.
  double ppt1 = 1.0;
  double ppt2 = 1.0;
};

/// All values are exact and cost O(N): every matrix involved is diagonal.
Gammas interlacing_gammas(const Hierarchy& h);

}  // namespace coarsen
