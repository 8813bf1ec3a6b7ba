#include "coarsen/eigensolver.hpp"

#include "coarsen/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace coarsen {

namespace {

void fix_signs(Matrix& v) {
  for (Index c = 0; c < v.cols(); ++c) {
    Index at = 0;
    v.col(c).cwiseAbs().maxCoeff(&at);
    if (v(at, c) < 0.0) v.col(c) = -v.col(c);
  }
}

double gershgorin_upper(const SparseMatrix& m) {
  double b = 0.0;
  for (Index c = 0; c < m.outerSize(); ++c) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) row += std::abs(it.value());
    b = std::max(b, row);
  }
  return b;
}

Vector residual_norms(const Matrix& lx, const Matrix& x, const Vector& theta) {
  Vector r(x.cols());
  for (Index c = 0; c < x.cols(); ++c) r(c) = (lx.col(c) - theta(c) * x.col(c)).norm();
  return r;
}

template <class M>
Matrix orthonormalize(const M& x) {
  Eigen::HouseholderQR<Matrix> qr(x);
  return qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
}

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class M>
void deflate(M& x, const Matrix& z) {
  if (z.cols() > 0) x -= z * (z.transpose() * x);
}

// shift * x + scale * (L x) for a symmetric L, so column i of the stored
// matrix doubles as row i.
struct Operator {
  const SparseMatrix* l;
  double shift;
  double scale;

  Index dim() const { return l->rows(); }

  // out = a * (op(y) - c * y) - b * prev, one pass over the rows.
  void step(const RowMatrix& y, const RowMatrix* prev, double a, double c, double b, RowMatrix& out) const {
    out.resize(y.rows(), y.cols());
    if (y.cols() == 8) {
      rows<8>(y, prev, a, c, b, out, 8);
    } else {
      rows<0>(y, prev, a, c, b, out, y.cols());
    }
  }

  // W > 0 fixes the width at compile time so the inner loops unroll.
  template <int W>
  void rows(const RowMatrix& y, const RowMatrix* prev, double a, double c, double b, RowMatrix& out,
            Index width) const {
    const Index w = W > 0 ? W : width;
    const double diag = a * (shift - c);
    const double off = a * scale;
    for (Index i = 0; i < y.rows(); ++i) {
      double* o = out.data() + i * w;
      const double* yi = y.data() + i * w;
      for (Index t = 0; t < w; ++t) o[t] = diag * yi[t];
      for (SparseMatrix::InnerIterator it(*l, i); it; ++it) {
        const double v = off * it.value();
        const double* yj = y.data() + it.row() * w;
        for (Index t = 0; t < w; ++t) o[t] += v * yj[t];
      }
      if (prev) {
        const double* pi = prev->data() + i * w;
        for (Index t = 0; t < w; ++t) o[t] -= b * pi[t];
      }
    }
  }

  RowMatrix apply(const RowMatrix& y) const {
    RowMatrix out;
    step(y, nullptr, 1.0, 0.0, 0.0, out);
    return out;
  }
};

// Column panels of at most one cache line per row. On graphs without
// locality every neighbour lookup is a random row access, and a narrow panel
// keeps the gathered working set at n * 64 bytes.
constexpr Index kPanel = 8;

std::vector<RowMatrix> split(const RowMatrix& x) {
  std::vector<RowMatrix> out;
  for (Index c = 0; c < x.cols(); c += kPanel) out.emplace_back(x.middleCols(c, std::min(kPanel, x.cols() - c)));
  return out;
}

RowMatrix join(const std::vector<RowMatrix>& panels, Index n, Index width) {
  RowMatrix out(n, width);
  Index c = 0;
  for (const RowMatrix& p : panels) {
    out.middleCols(c, p.cols()) = p;
    c += p.cols();
  }
  return out;
}

// Chebyshev-filtered subspace iteration for the smallest `nev` eigenpairs
// of a symmetric operator on the orthogonal complement of range(z). All
// eigenvalues lie in [0, upper].
EigenBasis filtered_subspace(const Operator& op, Index nev, Index block, double upper, const Matrix& z,
                             const EigenOptions& opts) {
  const Index n = op.dim();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix start(n, block);
  for (Index c = 0; c < block; ++c) {
    for (Index r = 0; r < n; ++r) start(r, c) = unif(rng);
  }
  deflate(start, z);
  RowMatrix x = orthonormalize(start);
  deflate(x, z);

  const double tol = std::max(opts.tol, 1e-13 * upper);
  RowMatrix lx = op.apply(x);
  RowMatrix y;
  Vector theta;
  Vector res;
  for (int outer = 0;; ++outer) {
    Matrix h = x.transpose() * lx;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    theta = es.eigenvalues();
    x = x * es.eigenvectors();
    lx = lx * es.eigenvectors();
    res.resize(nev);
    for (Index c = 0; c < nev; ++c) res(c) = (lx.col(c) - theta(c) * x.col(c)).norm();
    if (res.maxCoeff() <= tol) break;
    if (outer >= opts.max_outer) {
      throw EigensolverError("eigensolver did not converge (max residual " + std::to_string(res.maxCoeff()) + ")");
    }

    // Damp [cut, upper], amplify below cut.
    const double cut = theta(block - 1);
    const double e = 0.5 * (upper - cut);
    const double c = 0.5 * (upper + cut);
    if (!(e > 0.0)) throw EigensolverError("eigensolver lost the spectral interval");
    double a0 = theta(0);
    if (a0 >= cut) a0 = cut - 1e-3 * (upper - cut);
    double sigma = e / (a0 - c);
    const double tau = 2.0 / sigma;
    // The last pass only needs enough degree to close the remaining gap
    // between the worst residual and the tolerance.
    const double xw = (c - theta(nev - 1)) / e;
    int degree = opts.degree;
    if (xw > 1.0) {
      const double need = std::acosh(std::max(1.0, 10.0 * res.maxCoeff() / tol)) / std::acosh(xw);
      degree = static_cast<int>(std::clamp(std::ceil(need), 4.0, static_cast<double>(opts.degree)));
    }
    y = (lx - c * x) * (sigma / e);
    deflate(y, z);
    std::vector<RowMatrix> xp = split(x), yp = split(y), np(xp.size());
    for (int d = 2; d <= degree; ++d) {
      const double sigma_next = 1.0 / (tau - sigma);
      for (std::size_t q = 0; q < yp.size(); ++q) {
        op.step(yp[q], &xp[q], 2.0 * sigma_next / e, c, sigma * sigma_next, np[q]);
        deflate(np[q], z);
      }
      xp.swap(yp);
      yp.swap(np);
      sigma = sigma_next;
    }
    x = orthonormalize(join(yp, n, block));
    deflate(x, z);
    lx = op.apply(x);
  }

  EigenBasis out;
  out.values = theta.head(nev);
  out.vectors = x.leftCols(nev);
  out.residuals = res;
  return out;
}

EigenBasis dense_solve(const Laplacian& l, const Matrix& z) {
  const Index n = l.dim();
  const Index c = z.cols();
  Eigen::SelfAdjointEigenSolver<Matrix> es(l.dense());
  if (es.info() != Eigen::Success) throw EigensolverError("dense eigensolver failed");
  EigenBasis out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  out.values.head(c).setZero();
  out.vectors.leftCols(c) = z;
  if (n > c) {
    // Keep the non-null block exactly orthogonal to the analytic null space.
    Matrix rest = out.vectors.rightCols(n - c);
    deflate(rest, z);
    for (Index j = 0; j < rest.cols(); ++j) rest.col(j).normalize();
    out.vectors.rightCols(n - c) = rest;
  }
  fix_signs(out.vectors);
  const Matrix lx = l.matrix() * out.vectors;
  out.residuals = residual_norms(lx, out.vectors, out.values);
  return out;
}

}  // namespace

Matrix null_basis(const Laplacian& l) {
  const auto comps = connected_components(l);
  Matrix z = Matrix::Zero(l.dim(), static_cast<Index>(comps.size()));
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const double v = 1.0 / std::sqrt(static_cast<double>(comps[c].size()));
    for (const Index i : comps[c]) z(i, static_cast<Index>(c)) = v;
  }
  return z;
}

EigenBasis dense_eigenpairs(const Laplacian& l) { return dense_solve(l, null_basis(l)); }

EigenBasis smallest_eigenpairs(const Laplacian& l, Index k, const EigenOptions& opts) {
  const Index n = l.dim();
  if (k < 0 || k > n) throw DimensionMismatchError("requested " + std::to_string(k) + " eigenpairs of a " +
                                                   std::to_string(n) + "-vertex graph");
  const Matrix z = null_basis(l);
  const Index c = z.cols();
  if (n <= opts.dense_limit) {
    EigenBasis all = dense_solve(l, z);
    return {all.values.head(k), all.vectors.leftCols(k), all.residuals.head(k)};
  }
  EigenBasis out;
  out.values = Vector::Zero(k);
  out.vectors = Matrix::Zero(n, k);
  out.residuals = Vector::Zero(k);
  const Index nz = std::min(k, c);
  out.vectors.leftCols(nz) = z.leftCols(nz);
  const Index nev = k - nz;
  if (nev > 0) {
    const Index block = std::min(std::max(2 * nev, nev + 10), n - c);
    EigenBasis part = filtered_subspace({&l.matrix(), 0.0, 1.0}, nev, block, gershgorin_upper(l.matrix()), z, opts);
    out.values.tail(nev) = part.values;
    out.vectors.rightCols(nev) = part.vectors;
    out.residuals.tail(nev) = part.residuals;
  }
  fix_signs(out.vectors);
  return out;
}

EigenBasis smallest_eigenpairs_psd(const SparseMatrix& m, Index k, const EigenOptions& opts) {
  const Index n = m.rows();
  if (m.cols() != n) throw DimensionMismatchError("matrix must be square");
  if (k < 0 || k > n) throw DimensionMismatchError("requested " + std::to_string(k) + " eigenpairs of a " +
                                                   std::to_string(n) + "-row matrix");
  EigenBasis out;
  if (k == 0) {
    out.vectors = Matrix(n, 0);
    return out;
  }
  if (n <= opts.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(m)};
    if (es.info() != Eigen::Success) throw EigensolverError("dense eigensolver failed");
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    fix_signs(out.vectors);
    out.residuals = residual_norms(m * out.vectors, out.vectors, out.values);
    return out;
  }
  const Index block = std::min(std::max(2 * k, k + 10), n);
  out = filtered_subspace({&m, 0.0, 1.0}, k, block, gershgorin_upper(m), Matrix(n, 0), opts);
  fix_signs(out.vectors);
  return out;
}

EigenBasis largest_eigenpair(const Laplacian& l, const EigenOptions& opts) {
  const Index n = l.dim();
  if (n == 0) throw DimensionMismatchError("empty Laplacian");
  if (n <= opts.dense_limit) {
    EigenBasis all = dense_solve(l, null_basis(l));
    return {all.values.tail(1), all.vectors.rightCols(1), all.residuals.tail(1)};
  }
  // Smallest eigenpair of g I - L.
  const double g = gershgorin_upper(l.matrix());
  const Index block = std::min<Index>(8, n);
  EigenBasis part = filtered_subspace({&l.matrix(), g, -1.0}, 1, block, g, Matrix(n, 0), opts);
  EigenBasis out;
  out.values = Vector::Constant(1, g - part.values(0));
  out.vectors = part.vectors;
  fix_signs(out.vectors);
  out.residuals = part.residuals;
  return out;
}

}  // namespace coarsen
