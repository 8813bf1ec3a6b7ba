#include "coarsen/local_variation.hpp"

#include "coarsen/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace coarsen {

Matrix pseudo_sqrt(const Matrix& gram, bool inverse) {
  const Index k = gram.rows();
  if (k == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.transpose()));
  if (es.info() != Eigen::Success) throw EigensolverError("Gram eigendecomposition failed");
  const Vector& d = es.eigenvalues();
  const double top = d.maxCoeff();
  Vector f = Vector::Zero(k);
  if (top > 0.0) {
    const double cut = kPseudoSqrtThreshold * top;
    for (Index i = 0; i < k; ++i) {
      if (d(i) > cut) f(i) = inverse ? 1.0 / std::sqrt(d(i)) : std::sqrt(d(i));
    }
  }
  return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().transpose();
}

SubspaceBasis initial_basis(const Laplacian& l, Index k, const EigenOptions& opts) {
  const EigenBasis eb = smallest_eigenpairs(l, k, opts);
  SubspaceBasis out;
  out.b = eb.vectors;
  for (Index i = 0; i < k; ++i) {
    if (eb.values(i) > 0.0) {
      out.b.col(i) /= std::sqrt(eb.values(i));
    } else {
      out.b.col(i).setZero();
    }
  }
  out.a = out.b;
  return out;
}

SubspaceBasis explicit_basis(const Laplacian& l, const Matrix& v) {
  if (v.rows() != l.dim()) throw DimensionMismatchError("basis rows must match the graph size");
  const EigenBasis eb = dense_eigenpairs(l);
  Vector inv = Vector::Zero(eb.values.size());
  for (Index i = 0; i < inv.size(); ++i) {
    if (eb.values(i) > 0.0) inv(i) = 1.0 / eb.values(i);
  }
  const Matrix w = eb.vectors.transpose() * v;
  const Matrix m = w.transpose() * inv.asDiagonal() * w;
  SubspaceBasis out;
  out.a = v * pseudo_sqrt(m, false);
  out.b = out.a;
  return out;
}

SubspaceBasis advance_basis(const SubspaceBasis& b, const Partition& p, const Laplacian& l_next) {
  if (l_next.dim() != p.size_out()) throw DimensionMismatchError("coarse Laplacian does not match partition");
  SubspaceBasis out;
  out.b = project(p, b.b);
  const Matrix lb = l_next.matrix() * out.b;
  const Matrix g = out.b.transpose() * lb;
  out.a = out.b * pseudo_sqrt(g, true);
  return out;
}

Laplacian local_laplacian(const Laplacian& l, std::span<const Index> c) {
  if (c.empty()) throw InvalidPartitionError("local Laplacian of an empty set");
  std::vector<char> in(static_cast<std::size_t>(l.dim()), 0);
  for (const Index v : c) in[static_cast<std::size_t>(v)] = 1;
  std::vector<Laplacian::WeightEntry> w;
  for (const Index a : c) {
    l.for_each_neighbor(a, [&](Index j, double wij) {
      if (in[static_cast<std::size_t>(j)]) {
        if (a < j) w.push_back({a, j, wij});
      } else {
        w.push_back({a, j, 2.0 * wij});
      }
    });
  }
  return Laplacian::assemble(l.dim(), w);
}

Vector local_projection_comp(std::span<const Index> c, const Vector& x) {
  Vector out = Vector::Zero(x.size());
  if (c.empty()) return out;
  double mean = 0.0;
  for (const Index v : c) mean += x(v);
  mean /= static_cast<double>(c.size());
  for (const Index v : c) out(v) = x(v) - mean;
  return out;
}

LocalVariationCost::LocalVariationCost(const Laplacian& l, const Matrix& a)
    : l_(&l), a_(&a), pos_(static_cast<std::size_t>(l.dim()), -1) {
  if (a.rows() != l.dim()) throw DimensionMismatchError("basis rows must match the level size");
}

double LocalVariationCost::operator()(std::span<const Index> c) {
  const auto s = static_cast<Index>(c.size());
  if (s < 2) throw InvalidPartitionError("local variation cost needs at least two vertices");
  const Matrix& a = *a_;
  const Index k = a.cols();
  if (k == 0) return 0.0;

  if (s == 2) {
    // Block of L_C is [[2d_a - w, -w], [-w, 2d_b - w]]; Y = [d; -d].
    const double da = l_->degree(c[0]);
    const double db = l_->degree(c[1]);
    const double dn = 0.25 * (a.row(c[0]) - a.row(c[1])).squaredNorm();
    return std::max(0.0, dn * 2.0 * (da + db));
  }

  for (Index t = 0; t < s; ++t) {
    auto& p = pos_[static_cast<std::size_t>(c[t])];
    if (p >= 0) {
      for (Index u = 0; u < t; ++u) pos_[static_cast<std::size_t>(c[u])] = -1;
      throw InvalidPartitionError("repeated vertex in candidate set");
    }
    p = t;
  }
  Matrix m = Matrix::Zero(s, s);
  for (Index t = 0; t < s; ++t) {
    l_->for_each_neighbor(c[t], [&](Index j, double w) {
      const Index q = pos_[static_cast<std::size_t>(j)];
      if (q >= 0) {
        m(t, q) -= w;
        m(t, t) += w;
      } else {
        m(t, t) += 2.0 * w;
      }
    });
  }
  for (const Index v : c) pos_[static_cast<std::size_t>(v)] = -1;

  Matrix y(s, k);
  for (Index t = 0; t < s; ++t) y.row(t) = a.row(c[t]);
  y.rowwise() -= y.colwise().mean();

  double top = 0.0;
  if (k <= 2 * s) {
    const Matrix h = y.transpose() * (m * y);
    top = Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly)
              .eigenvalues()
              .maxCoeff();
  } else {
    const Matrix ms = pseudo_sqrt(m, false);
    const Matrix h = ms * (y * y.transpose()) * ms;
    top = Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly)
              .eigenvalues()
              .maxCoeff();
  }
  return std::max(0.0, top) / static_cast<double>(s - 1);
}

double local_variation_cost(std::span<const Index> c, const Matrix& a, const Laplacian& l) {
  LocalVariationCost f(l, a);
  return f(c);
}

CandidateSet CandidateFamily::pop() {
  CandidateSet top = heap_.top();
  heap_.pop();
  return top;
}

std::vector<std::vector<Index>> candidate_sets(const Laplacian& l, FamilyKind kind) {
  std::vector<std::vector<Index>> out;
  if (kind == FamilyKind::edge) {
    for (Index i = 0; i < l.dim(); ++i) {
      std::vector<Index> nb;
      l.for_each_neighbor(i, [&](Index j, double) {
        if (j > i) nb.push_back(j);
      });
      std::sort(nb.begin(), nb.end());
      for (const Index j : nb) out.push_back({i, j});
    }
    return out;
  }
  for (Index i = 0; i < l.dim(); ++i) {
    std::vector<Index> set{i};
    l.for_each_neighbor(i, [&](Index j, double) { set.push_back(j); });
    if (set.size() < 2) continue;
    std::sort(set.begin(), set.end());
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CandidateFamily build_family(const Laplacian& l, FamilyKind kind, const CostFunction& cost) {
  CandidateFamily f;
  for (auto& s : candidate_sets(l, kind)) {
    const double c = cost(s);
    f.push({std::move(s), c});
  }
  return f;
}

namespace {

// Connected pieces of the subgraph induced by sorted `members`.
std::vector<std::vector<Index>> split_connected(const Laplacian& l, const std::vector<Index>& members) {
  const std::size_t s = members.size();
  std::vector<int> comp(s, -1);
  std::vector<std::vector<Index>> out;
  for (std::size_t start = 0; start < s; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      out.back().push_back(members[a]);
      l.for_each_neighbor(members[a], [&](Index u, double) {
        const auto it = std::lower_bound(members.begin(), members.end(), u);
        if (it == members.end() || *it != u) return;
        const auto b = static_cast<std::size_t>(it - members.begin());
        if (comp[b] < 0) {
          comp[b] = id;
          stack.push_back(b);
        }
      });
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

}  // namespace

LevelResult coarsen_level(const Laplacian& l, FamilyKind kind, const CostFunction& cost, double sigma_threshold,
                          Index n_target) {
  const Index n = l.dim();
  const bool budgeted = std::isfinite(sigma_threshold);
  CandidateFamily family = build_family(l, kind, cost);
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Index>> sets;
  Index n_cur = n;
  double sig2 = 0.0;

  auto within = [&](double s2) { return !budgeted || std::sqrt(std::max(0.0, s2)) <= sigma_threshold; };

  while (!family.empty() && n_cur > n_target && within(sig2)) {
    CandidateSet c = family.pop();
    const bool clean = std::none_of(c.members.begin(), c.members.end(),
                                    [&](Index v) { return marked[static_cast<std::size_t>(v)]; });
    if (clean) {
      const double add = static_cast<double>(c.members.size() - 1) * c.cost;
      if (!within(sig2 + add)) continue;
      for (const Index v : c.members) marked[static_cast<std::size_t>(v)] = 1;
      n_cur -= static_cast<Index>(c.members.size()) - 1;
      sig2 += add;
      sets.push_back(std::move(c.members));
      continue;
    }
    std::vector<Index> rest;
    for (const Index v : c.members) {
      if (!marked[static_cast<std::size_t>(v)]) rest.push_back(v);
    }
    if (rest.size() < 2) continue;
    for (auto& piece : split_connected(l, rest)) {
      if (piece.size() < 2) continue;
      const double pc = cost(piece);
      family.push({std::move(piece), pc});
    }
  }
  for (Index v = 0; v < n; ++v) {
    if (!marked[static_cast<std::size_t>(v)]) sets.push_back({v});
  }
  std::sort(sets.begin(), sets.end(),
            [](const std::vector<Index>& x, const std::vector<Index>& y) { return x.front() < y.front(); });

  LevelResult out;
  out.partition = Partition(n, std::move(sets));
  out.laplacian = coarsen_laplacian(l, out.partition);
  out.sigma = std::sqrt(std::max(0.0, sig2));
  return out;
}

LevelResult coarsen_level(const Laplacian& l, const SubspaceBasis& basis, double sigma_threshold, Index n_target,
                          FamilyKind kind) {
  LocalVariationCost f(l, basis.a);
  return coarsen_level(
      l, kind, [&](std::span<const Index> c) { return f(c); }, sigma_threshold, n_target);
}

std::string method_name(FamilyKind kind) {
  return kind == FamilyKind::edge ? "local-var-edge" : "local-var-neigh";
}

Hierarchy coarsen_multilevel(const Laplacian& l, const SubspaceSpec& subspace, double eps_threshold, Index n_target,
                             FamilyKind kind, const EigenOptions& opts) {
  if (n_target < 1) throw InvalidPartitionError("target size must be at least 1");
  Hierarchy h(l);
  h.target = n_target;
  if (l.dim() <= n_target || !(eps_threshold > 0.0)) return h;

  SubspaceBasis basis = subspace.v.size() > 0 ? explicit_basis(l, subspace.v) : initial_basis(l, subspace.k, opts);
  double eps = 0.0;
  while (h.coarsest().dim() > n_target && eps < eps_threshold) {
    const double budget = std::isfinite(eps_threshold) ? (1.0 + eps_threshold) / (1.0 + eps) - 1.0 : kInfinity;
    LevelResult r = coarsen_level(h.coarsest(), basis, budget, n_target, kind);
    if (r.partition.is_identity()) {
      h.stalled = true;
      break;
    }
    eps = (1.0 + eps) * (1.0 + r.sigma) - 1.0;
    basis = advance_basis(basis, r.partition, r.laplacian);
    h.add_level(std::move(r.partition), std::move(r.laplacian), r.sigma, method_name(kind));
  }
  h.shortfall = h.coarsest().dim() > n_target;
  return h;
}

}  // namespace coarsen
