#pragma once

#include "coarsen/eigensolver.hpp"
#include "coarsen/graph.hpp"
#include "coarsen/hierarchy.hpp"
#include "coarsen/local_variation.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coarsen {

enum class Method { local_var_edge, local_var_neigh, heavy_edge, algebraic_distance, affinity, kron };

std::string to_string(Method m);
/// Accepts the names produced by to_string.
std::optional<Method> parse_method(const std::string& name);
std::span<const Method> all_methods();

/// Damping of the Jacobi smoother used for algebraic-distance test vectors.
inline constexpr double kJacobiOmega = 2.0 / 3.0;

/// -w_ij / max(deg_i, deg_j).
double heavy_edge_cost(const Laplacian& l, Index i, Index j);

/// Q seeded uniform[-1, 1] vectors smoothed by `sweeps` damped Jacobi sweeps
/// on L x = 0, each column renormalized to unit length after every sweep.
Matrix jacobi_test_vectors(const Laplacian& l, Index q, int sweeps, std::uint64_t seed);
/// Seeded vectors smoothed by forward Gauss-Seidel sweeps on L x = 0.
Matrix gauss_seidel_test_vectors(const Laplacian& l, Index q, int sweeps, std::uint64_t seed);

/// sqrt(sum_q (x_q(i) - x_q(j))^2).
double algebraic_distance_cost(const Matrix& x, Index i, Index j);
/// -(x_i . x_j)^2 / (|x_i|^2 |x_j|^2), 0 when a row vanishes.
double affinity_cost(const Matrix& x, Index i, Index j);

/// Schur complement of L onto `keep`.
Laplacian kron_reduce(const Laplacian& l, std::span<const Index> keep);

struct KronLevel {
  std::vector<Index> keep;
  Laplacian laplacian;
};

/// Keeps the positive side of the last eigenvector (oriented so that side is
/// the larger one), adjusted to exactly `n_keep` vertices by |u_N|.
KronLevel kron_level(const Laplacian& l, Index n_keep, const EigenOptions& opts = {});
KronLevel kron_level(const Laplacian& l, const EigenOptions& opts = {});

struct BaselineOptions {
  Index k = 10;
  std::uint64_t seed = 0;
  int jacobi_sweeps = 20;
  int gauss_seidel_sweeps = 1;
  double eps_threshold = kInfinity;
  EigenOptions eigen;
};

/// Builds a hierarchy with any method down to `n_target` vertices. Matching
/// baselines reuse the greedy edge-family contraction with their own cost and
/// store no sigma; Kron halves the graph per level.
Hierarchy run_method(const Laplacian& l, Method method, Index n_target, const BaselineOptions& opts = {});

}  // namespace coarsen
