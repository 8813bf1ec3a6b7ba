#include "coarsen/baselines.hpp"

#include "coarsen/errors.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

namespace coarsen {

namespace {

constexpr std::array<Method, 6> kMethods = {Method::local_var_edge,     Method::local_var_neigh, Method::heavy_edge,
                                            Method::algebraic_distance, Method::affinity,        Method::kron};

Matrix seeded_uniform(Index n, Index q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix x(n, q);
  for (Index c = 0; c < q; ++c) {
    for (Index r = 0; r < n; ++r) x(r, c) = unif(rng);
  }
  return x;
}

void require_positive_degrees(const Vector& deg) {
  for (Index i = 0; i < deg.size(); ++i) {
    if (!(deg(i) > 0.0)) throw InvalidGraphError("vertex " + std::to_string(i) + " has zero degree");
  }
}

void normalize_columns(Matrix& x) {
  for (Index c = 0; c < x.cols(); ++c) {
    const double nrm = x.col(c).norm();
    if (nrm > 0.0) x.col(c) /= nrm;
  }
}

double edge_weight(const Laplacian& l, Index i, Index j) { return -l.matrix().coeff(i, j); }

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::local_var_edge:
      return "local-var-edge";
    case Method::local_var_neigh:
      return "local-var-neigh";
    case Method::heavy_edge:
      return "heavy-edge";
    case Method::algebraic_distance:
      return "algebraic-distance";
    case Method::affinity:
      return "affinity";
    case Method::kron:
      return "kron";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  for (const Method m : kMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::span<const Method> all_methods() { return kMethods; }

double heavy_edge_cost(const Laplacian& l, Index i, Index j) {
  return -edge_weight(l, i, j) / std::max(l.degree(i), l.degree(j));
}

Matrix jacobi_test_vectors(const Laplacian& l, Index q, int sweeps, std::uint64_t seed) {
  const Vector deg = l.degrees();
  require_positive_degrees(deg);
  Matrix x = seeded_uniform(l.dim(), q, seed);
  const Vector inv = deg.cwiseInverse();
  for (int s = 0; s < sweeps; ++s) {
    const Matrix lx = l.matrix() * x;
    x -= kJacobiOmega * (inv.asDiagonal() * lx);
    normalize_columns(x);
  }
  return x;
}

Matrix gauss_seidel_test_vectors(const Laplacian& l, Index q, int sweeps, std::uint64_t seed) {
  const Vector deg = l.degrees();
  require_positive_degrees(deg);
  Matrix x = seeded_uniform(l.dim(), q, seed);
  for (int s = 0; s < sweeps; ++s) {
    for (Index i = 0; i < l.dim(); ++i) {
      for (Index c = 0; c < q; ++c) {
        double acc = 0.0;
        l.for_each_neighbor(i, [&](Index j, double w) { acc += w * x(j, c); });
        x(i, c) = acc / deg(i);
      }
    }
    normalize_columns(x);
  }
  return x;
}

double algebraic_distance_cost(const Matrix& x, Index i, Index j) { return (x.row(i) - x.row(j)).norm(); }

double affinity_cost(const Matrix& x, Index i, Index j) {
  const double ni = x.row(i).squaredNorm();
  const double nj = x.row(j).squaredNorm();
  if (ni == 0.0 || nj == 0.0) return 0.0;
  const double dot = x.row(i).dot(x.row(j));
  return -(dot * dot) / (ni * nj);
}

Laplacian kron_reduce(const Laplacian& l, std::span<const Index> keep_in) {
  const Index n = l.dim();
  std::vector<Index> keep(keep_in.begin(), keep_in.end());
  std::sort(keep.begin(), keep.end());
  if (keep.empty() || std::adjacent_find(keep.begin(), keep.end()) != keep.end() || keep.front() < 0 ||
      keep.back() >= n) {
    throw InvalidPartitionError("keep set must be a non-empty set of distinct vertices");
  }
  // Position of each vertex inside its block, keep as >= 0, drop as < 0.
  std::vector<Index> slot(static_cast<std::size_t>(n));
  std::vector<Index> drop;
  {
    std::size_t t = 0;
    for (Index v = 0; v < n; ++v) {
      if (t < keep.size() && keep[t] == v) {
        slot[static_cast<std::size_t>(v)] = static_cast<Index>(t++);
      } else {
        slot[static_cast<std::size_t>(v)] = -1 - static_cast<Index>(drop.size());
        drop.push_back(v);
      }
    }
  }
  const auto nk = static_cast<Index>(keep.size());
  const auto nd = static_cast<Index>(drop.size());

  std::vector<Laplacian::WeightEntry> w;
  if (nd == 0) {
    for (Index c = 0; c < n; ++c) {
      l.for_each_neighbor(c, [&](Index j, double wij) {
        if (c < j) w.push_back({c, j, wij});
      });
    }
    return Laplacian::assemble(n, w);
  }

  using Triplet = Eigen::Triplet<double, SparseMatrix::StorageIndex>;
  std::vector<Triplet> tdd, tdk;
  for (Index c = 0; c < n; ++c) {
    const Index sc = slot[static_cast<std::size_t>(c)];
    if (sc >= 0) continue;
    for (SparseMatrix::InnerIterator it(l.matrix(), c); it; ++it) {
      const Index sr = slot[static_cast<std::size_t>(it.row())];
      if (sr < 0) {
        tdd.emplace_back(-1 - sr, -1 - sc, it.value());
      } else {
        tdk.emplace_back(-1 - sc, sr, it.value());
      }
    }
  }
  SparseMatrix ldd(nd, nd), ldk(nd, nk);
  ldd.setFromTriplets(tdd.begin(), tdd.end());
  ldk.setFromTriplets(tdk.begin(), tdk.end());

  Eigen::SimplicialLDLT<SparseMatrix> ldlt(ldd);
  if (ldlt.info() != Eigen::Success) throw DisconnectedGraphError("eliminated block is singular");
  const Vector d = ldlt.vectorD();
  if (d.minCoeff() <= 1e-12 * std::max(1.0, d.maxCoeff())) {
    throw DisconnectedGraphError("eliminated block is singular: a dropped component has no kept vertex");
  }
  const Matrix x = ldlt.solve(Matrix(ldk));
  const Matrix s = Matrix(SparseMatrix(ldk.transpose())) * x;

  // Off-diagonal (i, j) of the result: L(i, j) - s(i, j).
  Matrix direct = Matrix::Zero(nk, nk);
  for (Index t = 0; t < nk; ++t) {
    l.for_each_neighbor(keep[static_cast<std::size_t>(t)], [&](Index j, double wij) {
      const Index sj = slot[static_cast<std::size_t>(j)];
      if (sj >= 0) direct(t, sj) = wij;
    });
  }
  for (Index j = 0; j < nk; ++j) {
    for (Index i = 0; i < j; ++i) {
      const double val = direct(i, j) + 0.5 * (s(i, j) + s(j, i));
      if (val > 0.0) w.push_back({i, j, val});
    }
  }
  return Laplacian::assemble(nk, w);
}

KronLevel kron_level(const Laplacian& l, Index n_keep, const EigenOptions& opts) {
  const Index n = l.dim();
  if (n_keep < 1 || n_keep > n) throw InvalidPartitionError("invalid Kron target size");
  Vector u = largest_eigenpair(l, opts).vectors.col(0);
  Index pos = 0, neg = 0;
  for (Index i = 0; i < n; ++i) {
    pos += u(i) > 0.0;
    neg += u(i) < 0.0;
  }
  if (neg > pos) u = -u;

  std::vector<Index> keep, drop;
  for (Index i = 0; i < n; ++i) (u(i) > 0.0 ? keep : drop).push_back(i);
  if (keep.empty()) {
    // Median split on the raw values.
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return u(a) > u(b); });
    keep.assign(order.begin(), order.begin() + (n + 1) / 2);
    drop.assign(order.begin() + (n + 1) / 2, order.end());
    std::sort(keep.begin(), keep.end());
    std::sort(drop.begin(), drop.end());
  }
  auto by_magnitude = [&](Index a, Index b) {
    const double x = std::abs(u(a)), y = std::abs(u(b));
    return x != y ? x < y : a < b;
  };
  const auto target = static_cast<std::size_t>(n_keep);
  if (keep.size() > target) {
    std::sort(keep.begin(), keep.end(), by_magnitude);
    keep.erase(keep.begin(), keep.begin() + static_cast<std::ptrdiff_t>(keep.size() - target));
  } else if (keep.size() < target) {
    std::sort(drop.begin(), drop.end(), by_magnitude);
    keep.insert(keep.end(), drop.begin(), drop.begin() + static_cast<std::ptrdiff_t>(target - keep.size()));
  }
  std::sort(keep.begin(), keep.end());
  KronLevel out;
  out.laplacian = kron_reduce(l, keep);
  out.keep = std::move(keep);
  return out;
}

KronLevel kron_level(const Laplacian& l, const EigenOptions& opts) {
  const Index n = l.dim();
  if (n == 0) throw DimensionMismatchError("empty Laplacian");
  Vector u = largest_eigenpair(l, opts).vectors.col(0);
  Index pos = 0, neg = 0;
  for (Index i = 0; i < n; ++i) {
    pos += u(i) > 0.0;
    neg += u(i) < 0.0;
  }
  Index side = std::max(pos, neg);
  if (side == 0 || side == n) side = (n + 1) / 2;
  return kron_level(l, side, opts);
}

Hierarchy run_method(const Laplacian& l, Method method, Index n_target, const BaselineOptions& opts) {
  if (n_target < 1) throw InvalidPartitionError("target size must be at least 1");
  if (method == Method::local_var_edge || method == Method::local_var_neigh) {
    const FamilyKind kind = method == Method::local_var_edge ? FamilyKind::edge : FamilyKind::neighborhood;
    return coarsen_multilevel(l, SubspaceSpec{opts.k, {}}, opts.eps_threshold, n_target, kind, opts.eigen);
  }

  Hierarchy h(l);
  h.target = n_target;
  const std::string tag = to_string(method);
  for (std::uint64_t level = 0; h.coarsest().dim() > n_target; ++level) {
    const Laplacian& cur = h.coarsest();
    if (method == Method::kron) {
      if (cur.dim() < 2) break;
      KronLevel kl = kron_level(cur, opts.eigen);
      if (static_cast<Index>(kl.keep.size()) < n_target) kl = kron_level(cur, n_target, opts.eigen);
      if (static_cast<Index>(kl.keep.size()) >= cur.dim()) {
        h.stalled = true;
        break;
      }
      h.add_kron_level(std::move(kl.keep), std::move(kl.laplacian), tag);
      continue;
    }

    CostFunction cost;
    Matrix x;
    if (method == Method::heavy_edge) {
      cost = [&cur](std::span<const Index> c) { return heavy_edge_cost(cur, c[0], c[1]); };
    } else if (method == Method::algebraic_distance) {
      x = jacobi_test_vectors(cur, opts.k, opts.jacobi_sweeps, opts.seed + level);
      cost = [&x](std::span<const Index> c) { return algebraic_distance_cost(x, c[0], c[1]); };
    } else {
      x = gauss_seidel_test_vectors(cur, opts.k, opts.gauss_seidel_sweeps, opts.seed + level);
      cost = [&x](std::span<const Index> c) { return affinity_cost(x, c[0], c[1]); };
    }
    LevelResult r = coarsen_level(cur, FamilyKind::edge, cost, kInfinity, n_target);
    if (r.partition.is_identity()) {
      h.stalled = true;
      break;
    }
    h.add_level(std::move(r.partition), std::move(r.laplacian), std::nullopt, tag);
  }
  h.shortfall = h.coarsest().dim() > n_target;
  return h;
}

}  // namespace coarsen
