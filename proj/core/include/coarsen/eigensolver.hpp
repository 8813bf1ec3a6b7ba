#pragma once

#include "coarsen/graph.hpp"

#include <cstdint>

namespace coarsen {

struct EigenBasis {
  /// Ascending eigenvalues.
  Vector values;
  /// Orthonormal eigenvectors, one per column.
  Matrix vectors;
  /// ||L u - lambda u||_2 per pair.
  Vector residuals;
};

struct EigenOptions {
  /// Absolute residual target for every returned pair.
  double tol = 1e-8;
  /// Largest Chebyshev filter degree per outer iteration.
  int degree = 24;
  int max_outer = 4000;
  /// Graphs up to this size are solved with a dense symmetric solver.
  Index dense_limit = 512;
  std::uint64_t seed = 0x5eedULL;
};

/// Orthonormal basis of ker L: normalized indicators of the connected
/// components, ordered by smallest member.
Matrix null_basis(const Laplacian& l);

/// The k smallest eigenpairs of a Laplacian. Zero eigenvalues are set
/// analytically: they are reported as exactly 0 with component indicator
/// vectors (u_1 = 1/sqrt(N) for a connected graph). The rest come from the
/// dense solver or from Chebyshev-filtered subspace iteration on the
/// complement of the null space. Each eigenvector is signed so that its
/// entry of largest magnitude is positive.
EigenBasis smallest_eigenpairs(const Laplacian& l, Index k, const EigenOptions& opts = {});

/// Full dense spectrum (size-guarded), null space handled as above.
EigenBasis dense_eigenpairs(const Laplacian& l);

/// The k smallest eigenpairs of a symmetric positive semidefinite matrix
/// with no assumed null space. Dense up to opts.dense_limit, else filtered
/// subspace iteration with a Gershgorin upper bound.
EigenBasis smallest_eigenpairs_psd(const SparseMatrix& m, Index k, const EigenOptions& opts = {});

/// Largest eigenpair.
EigenBasis largest_eigenpair(const Laplacian& l, const EigenOptions& opts = {});

}  // namespace coarsen
