#pragma once

#include "coarsen/eigensolver.hpp"
#include "coarsen/graph.hpp"
#include "coarsen/hierarchy.hpp"
#include "coarsen/partition.hpp"

#include <cstdint>
#include <limits>
#include <string>

namespace coarsen {

/// Outcome of one inequality check. `worst` is the largest lhs - rhs seen
/// (negative when every instance holds with room to spare).
struct BoundReport {
  bool applicable = true;
  std::string note;
  double worst = -std::numeric_limits<double>::infinity();
  bool ok = true;
};

/// eps_i = ||Pi^perp U_i Lambda_i^{+1/2}||_L for i = 1..k, from the leading
/// principal blocks of one k x k Gram matrix (so the profile is monotone).
/// `base` must hold at least k smallest eigenpairs of h.base().
Vector restricted_epsilons(const Hierarchy& h, const EigenBasis& base, Index k);
double restricted_epsilon(const Hierarchy& h, Index k, const EigenOptions& opts = {});

/// Samples x in span(U_k) and checks (1-eps)|x|_L <= |P x|_{L_c} <= (1+eps)|x|_L,
/// compared in squared form so the slack is not swamped near zero.
BoundReport check_corollary_isometry(const Hierarchy& h, const EigenBasis& base, Index k, double eps, int trials,
                                     std::uint64_t seed, double slack = 1e-9);

/// Mean over i <= k of |lc_i - l_i| / l_i; terms where both are exactly zero
/// count as 0.
double eigenvalue_error(const Vector& lambda, const Vector& lambda_c, Index k);
double eigenvalue_error(const Laplacian& l, const Laplacian& lc, Index k, const EigenOptions& opts = {});

/// C L C^T for C = Q_c ... Q_1, where Q_l has entry 1/sqrt|S| at (r, v) for
/// v in set S_r of level l. C has orthonormal rows, so the spectrum of this
/// operator interlaces the base spectrum without the set-size factors that
/// shift the spectrum of L_c. Throws for hierarchies with Kron levels.
SparseMatrix normalized_operator(const Hierarchy& h);

/// Mean over i <= k of |mu_i - l_i| / l_i where null modes of the base
/// (l_i == 0) count as 0 regardless of mu_i. After several levels C 1 is
/// no longer an eigenvector of C L C^T, so mu_1 is small but nonzero.
double normalized_eigenvalue_error(const Vector& lambda, const Vector& mu, Index k);

/// gamma1 lambda_i <= lc_i <= gamma2 lambda_{i+N-n} for i <= n. `lambda`
/// must hold the whole base spectrum.
BoundReport check_interlacing(const Vector& lambda, const Vector& lambda_c, const Gammas& g, double slack = 1e-9);

/// For every i in 2..k with eps_i^2 < lambda_2 / lambda_i:
/// gamma1 l_i <= lc_i <= gamma2 (1+eps_i)^2 l_i / (1 - eps_i^2 l_i / l_2).
BoundReport check_theorem_eigenvalues(const Vector& lambda, const Vector& lambda_c, const Vector& eps,
                                      const Gammas& g, Index k, double slack = 1e-9);

/// sum_{i<=k} sum_{j>k} (uc_j^T P u_i)^2 via ||P U_k||_F^2 - ||Uc_k^T P U_k||_F^2.
double sin_theta_frobenius(const Hierarchy& h, const EigenBasis& base, const EigenBasis& coarse, Index k);

/// ||sin Theta||_F^2 <= (sum_i l_i((1+eps_i)^2/gamma1 - 1) + l_k sum_i eps_i) / (l_{k+1} - l_k).
/// `base` needs k + 1 pairs.
BoundReport check_theorem_sintheta(double sin2, const Vector& lambda, const Vector& eps, const Gammas& g, Index k,
                                   double slack = 1e-9);

/// True when the composite Pi = P+ P is symmetric, i.e. every base vertex
/// carries weight 1/|S| for its composed set S. Always true for one level.
bool orthogonal_projection(const Hierarchy& h);

/// ||Pi^perp u_i||^2 <= eps_i for i <= k. Not applicable when Pi is oblique.
BoundReport lift_lengths_check(const Hierarchy& h, const EigenBasis& base, const Vector& eps, Index k,
                               double slack = 1e-9);

/// sum over clusters of sum_{i,j in S} |X_i - X_j|^2 / (2|S|).
double kmeans_cost(const Matrix& x, const Partition& p);

struct EvalReport {
  /// eps_k; NaN for hierarchies with Kron levels.
  double epsilon = 0.0;
  Vector eps_profile;
  double eig_err = 0.0;
  /// Same error against the spectrum of normalized_operator(h); NaN for
  /// hierarchies with Kron levels.
  double eig_err_norm = 0.0;
  double sin_theta = 0.0;
  Gammas gammas;
  BoundReport interlacing, eigenvalues, sintheta, lift_lengths, isometry;
  bool bounds_ok = true;
};

/// Every measurement for one hierarchy and subspace size k. Needs a
/// connected base graph.
EvalReport evaluate(const Hierarchy& h, Index k, const EigenOptions& opts = {});

}  // namespace coarsen
