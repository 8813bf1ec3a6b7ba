#include "coarsen/hierarchy.hpp"

#include "coarsen/errors.hpp"

#include <algorithm>
#include <limits>

namespace coarsen {

Index HierarchyLevel::size_in() const {
  return kind == LevelKind::consistent ? partition.size_in() : static_cast<Index>(-1);
}

Hierarchy::Hierarchy(Laplacian base, GraphMeta meta) : base_(std::move(base)), meta_(std::move(meta)) {
  if (meta_.n_vertices == 0) meta_.n_vertices = base_.dim();
  if (meta_.n_edges == 0) meta_.n_edges = base_.num_edges();
}

void Hierarchy::push(HierarchyLevel level) {
  if (level.size_out() >= coarsest().dim()) {
    throw InvalidPartitionError("level does not reduce the graph (" + std::to_string(coarsest().dim()) + " -> " +
                                std::to_string(level.size_out()) + ")");
  }
  levels_.push_back(std::move(level));
}

void Hierarchy::add_level(Partition p, std::optional<double> sigma, std::string method) {
  Laplacian coarse = coarsen_laplacian(coarsest(), p);
  add_level(std::move(p), std::move(coarse), sigma, std::move(method));
}

void Hierarchy::add_level(Partition p, Laplacian coarse, std::optional<double> sigma, std::string method) {
  if (p.size_in() != coarsest().dim() || coarse.dim() != p.size_out()) {
    throw DimensionMismatchError("level dimensions do not chain");
  }
  HierarchyLevel level;
  level.kind = LevelKind::consistent;
  level.partition = std::move(p);
  level.laplacian = std::move(coarse);
  level.sigma = sigma;
  level.method = std::move(method);
  push(std::move(level));
}

void Hierarchy::add_kron_level(std::vector<Index> keep, Laplacian reduced, std::string method) {
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw InvalidPartitionError("repeated vertex in keep set");
  }
  if (keep.empty() || keep.front() < 0 || keep.back() >= coarsest().dim()) {
    throw InvalidPartitionError("keep set out of range");
  }
  if (reduced.dim() != static_cast<Index>(keep.size())) throw DimensionMismatchError("keep set / Laplacian size");
  HierarchyLevel level;
  level.kind = LevelKind::kron;
  level.keep = std::move(keep);
  level.laplacian = std::move(reduced);
  level.method = std::move(method);
  push(std::move(level));
}

bool Hierarchy::consistent() const noexcept {
  return std::all_of(levels_.begin(), levels_.end(),
                     [](const HierarchyLevel& l) { return l.kind == LevelKind::consistent; });
}

std::optional<double> Hierarchy::eps_bound() const {
  double prod = 1.0;
  for (const auto& l : levels_) {
    if (!l.sigma) return std::nullopt;
    prod *= 1.0 + *l.sigma;
  }
  return prod - 1.0;
}

namespace {

void require_consistent(const Hierarchy& h) {
  if (!h.consistent()) throw InvalidPartitionError("operation needs a consistent hierarchy");
}

}  // namespace

ComposedMap compose(const Hierarchy& h) {
  require_consistent(h);
  const Index n = h.base().dim();
  ComposedMap m;
  m.owner.resize(static_cast<std::size_t>(n));
  m.weight = Vector::Ones(n);
  for (Index i = 0; i < n; ++i) m.owner[static_cast<std::size_t>(i)] = i;
  m.size_out = n;
  for (const auto& level : h.levels()) {
    const auto& p = level.partition;
    for (Index i = 0; i < n; ++i) {
      auto& o = m.owner[static_cast<std::size_t>(i)];
      m.weight(i) /= static_cast<double>(p.set_size(p.owner(o)));
      o = p.owner(o);
    }
    m.size_out = p.size_out();
  }
  return m;
}

Partition composed_partition(const Hierarchy& h) {
  const auto m = compose(h);
  std::vector<std::vector<Index>> sets(static_cast<std::size_t>(m.size_out));
  for (Index i = 0; i < static_cast<Index>(m.owner.size()); ++i) {
    sets[static_cast<std::size_t>(m.owner[static_cast<std::size_t>(i)])].push_back(i);
  }
  return Partition(static_cast<Index>(m.owner.size()), std::move(sets));
}

Vector compose_project(const Hierarchy& h, const Vector& x) {
  require_consistent(h);
  Vector y = x;
  for (const auto& level : h.levels()) y = project(level.partition, y);
  return y;
}

Matrix compose_project(const Hierarchy& h, const Matrix& x) {
  require_consistent(h);
  Matrix y = x;
  for (const auto& level : h.levels()) y = project(level.partition, y);
  return y;
}

Vector compose_lift(const Hierarchy& h, const Vector& xc) {
  require_consistent(h);
  Vector y = xc;
  const auto levels = h.levels();
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) y = lift(it->partition, y);
  return y;
}

Matrix compose_lift(const Hierarchy& h, const Matrix& xc) {
  require_consistent(h);
  Matrix y = xc;
  const auto levels = h.levels();
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) y = lift(it->partition, y);
  return y;
}

Vector compose_pi_comp(const Hierarchy& h, const Vector& x) { return x - compose_lift(h, compose_project(h, x)); }

Matrix compose_pi_comp(const Hierarchy& h, const Matrix& x) { return x - compose_lift(h, compose_project(h, x)); }

Matrix dense_composed_matrix(const Hierarchy& h) {
  if (h.base().dim() > kDenseLimit) throw SizeGuardError("dense composed matrix above size limit");
  const auto m = compose(h);
  Matrix p = Matrix::Zero(m.size_out, h.base().dim());
  for (Index i = 0; i < h.base().dim(); ++i) p(m.owner[static_cast<std::size_t>(i)], i) = m.weight(i);
  return p;
}

std::pair<double, double> quadratic_form_preservation_check(const Hierarchy& h, const Vector& x) {
  const Vector xc = compose_project(h, x);
  const Vector xl = compose_lift(h, xc);
  return {h.coarsest().quadratic_form(xc), h.base().quadratic_form(xl)};
}

Gammas interlacing_gammas(const Hierarchy& h) {
  const auto m = compose(h);
  Gammas g;
  if (m.size_out == 0) return g;
  Vector sq = Vector::Zero(m.size_out);
  Vector count = Vector::Zero(m.size_out);
  for (Index i = 0; i < static_cast<Index>(m.owner.size()); ++i) {
    const Index r = m.owner[static_cast<std::size_t>(i)];
    sq(r) += m.weight(i) * m.weight(i);
    count(r) += 1.0;
  }
  g.gamma1 = count.minCoeff();
  g.gamma2 = count.maxCoeff();
  g.bound1 = 1.0 / m.weight.maxCoeff();
  g.bound2 = 1.0 / m.weight.minCoeff();
  g.ppt1 = 1.0 / sq.maxCoeff();
  g.ppt2 = 1.0 / sq.minCoeff();
  return g;
}

}  // namespace coarsen
