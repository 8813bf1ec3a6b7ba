#include "coarsen/metrics.hpp"

#include "coarsen/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace coarsen {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_connected(const Laplacian& l) {
  if (l.dim() > 0 && connected_components(l).size() != 1) {
    throw DisconnectedGraphError("measurement needs a connected base graph");
  }
}

void record(BoundReport& r, double excess, double slack) {
  r.worst = std::max(r.worst, excess);
  if (excess > slack) r.ok = false;
}

double top_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .maxCoeff();
}

}  // namespace

bool orthogonal_projection(const Hierarchy& h) {
  const ComposedMap m = compose(h);
  std::vector<Index> count(static_cast<std::size_t>(m.size_out), 0);
  for (const Index o : m.owner) ++count[static_cast<std::size_t>(o)];
  for (std::size_t i = 0; i < m.owner.size(); ++i) {
    const double uniform = 1.0 / static_cast<double>(count[static_cast<std::size_t>(m.owner[i])]);
    if (std::abs(m.weight(static_cast<Index>(i)) - uniform) > 1e-12 * uniform) return false;
  }
  return true;
}

Vector restricted_epsilons(const Hierarchy& h, const EigenBasis& base, Index k) {
  require_connected(h.base());
  if (k < 0 || k > base.vectors.cols()) throw DimensionMismatchError("not enough base eigenpairs");
  Matrix y = base.vectors.leftCols(k);
  for (Index i = 0; i < k; ++i) {
    if (base.values(i) > 0.0) {
      y.col(i) /= std::sqrt(base.values(i));
    } else {
      y.col(i).setZero();
    }
  }
  y = compose_pi_comp(h, y);
  const Matrix g = y.transpose() * (h.base().matrix() * y);
  Vector eps(k);
  for (Index i = 0; i < k; ++i) eps(i) = std::sqrt(std::max(0.0, top_eigenvalue(g.topLeftCorner(i + 1, i + 1))));
  return eps;
}

double restricted_epsilon(const Hierarchy& h, Index k, const EigenOptions& opts) {
  if (k == 0) return 0.0;
  const EigenBasis base = smallest_eigenpairs(h.base(), k, opts);
  return restricted_epsilons(h, base, k)(k - 1);
}

BoundReport check_corollary_isometry(const Hierarchy& h, const EigenBasis& base, Index k, double eps, int trials,
                                     std::uint64_t seed, double slack) {
  BoundReport r;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  // Squared forms: the square root of a roundoff-level form (constant
  // vector) is ~1e-8 and would swamp the slack.
  auto check = [&](const Vector& x) {
    const double fine = std::max(0.0, h.base().quadratic_form(x));
    const double coarse = std::max(0.0, h.coarsest().quadratic_form(compose_project(h, x)));
    if (eps < 1.0) record(r, (1.0 - eps) * (1.0 - eps) * fine - coarse, slack);
    record(r, coarse - (1.0 + eps) * (1.0 + eps) * fine, slack);
  };
  for (Index i = 0; i < k; ++i) check(base.vectors.col(i));
  for (int t = 0; t < trials; ++t) {
    Vector c(k);
    for (Index i = 0; i < k; ++i) c(i) = gauss(rng);
    check(base.vectors.leftCols(k) * c);
  }
  return r;
}

double eigenvalue_error(const Vector& lambda, const Vector& lambda_c, Index k) {
  if (k > lambda.size() || k > lambda_c.size()) throw DimensionMismatchError("not enough eigenvalues");
  if (k == 0) return 0.0;
  double sum = 0.0;
  for (Index i = 0; i < k; ++i) {
    if (lambda(i) == 0.0) {
      if (lambda_c(i) != 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    sum += std::abs(lambda_c(i) - lambda(i)) / lambda(i);
  }
  return sum / static_cast<double>(k);
}

double eigenvalue_error(const Laplacian& l, const Laplacian& lc, Index k, const EigenOptions& opts) {
  return eigenvalue_error(smallest_eigenpairs(l, k, opts).values, smallest_eigenpairs(lc, k, opts).values, k);
}

SparseMatrix normalized_operator(const Hierarchy& h) {
  if (!h.consistent()) throw DimensionMismatchError("normalized operator needs a consistent hierarchy");
  SparseMatrix m = h.base().matrix();
  for (const HierarchyLevel& lv : h.levels()) {
    const Partition& p = lv.partition;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(p.size_in()));
    for (Index r = 0; r < p.size_out(); ++r) {
      const double v = 1.0 / std::sqrt(static_cast<double>(p.set_size(r)));
      for (const Index i : p.set(r)) t.emplace_back(r, i, v);
    }
    SparseMatrix q(p.size_out(), p.size_in());
    q.setFromTriplets(t.begin(), t.end());
    SparseMatrix next = q * m * SparseMatrix(q.transpose());
    m = 0.5 * (next + SparseMatrix(next.transpose()));
  }
  m.prune(0.0);
  return m;
}

double normalized_eigenvalue_error(const Vector& lambda, const Vector& mu, Index k) {
  if (k > lambda.size() || k > mu.size()) throw DimensionMismatchError("not enough eigenvalues");
  if (k == 0) return 0.0;
  double sum = 0.0;
  for (Index i = 0; i < k; ++i) {
    if (lambda(i) != 0.0) sum += std::abs(mu(i) - lambda(i)) / lambda(i);
  }
  return sum / static_cast<double>(k);
}

BoundReport check_interlacing(const Vector& lambda, const Vector& lambda_c, const Gammas& g, double slack) {
  BoundReport r;
  const Index big = lambda.size();
  const Index n = lambda_c.size();
  if (n > big) throw DimensionMismatchError("coarse spectrum larger than the base spectrum");
  for (Index i = 0; i < n; ++i) {
    record(r, g.gamma1 * lambda(i) - lambda_c(i), slack);
    record(r, lambda_c(i) - g.gamma2 * lambda(i + big - n), slack);
  }
  return r;
}

BoundReport check_theorem_eigenvalues(const Vector& lambda, const Vector& lambda_c, const Vector& eps,
                                      const Gammas& g, Index k, double slack) {
  BoundReport r;
  r.applicable = false;
  if (k < 2 || lambda.size() < k || lambda_c.size() < k || eps.size() < k) {
    r.note = "needs k >= 2";
    return r;
  }
  const double l2 = lambda(1);
  if (!(l2 > 1e-12)) {
    r.note = "lambda_2 vanishes";
    return r;
  }
  for (Index i = 1; i < k; ++i) {
    const double e2 = eps(i) * eps(i);
    if (!(e2 < l2 / lambda(i))) continue;
    r.applicable = true;
    const double upper = g.gamma2 * (1.0 + eps(i)) * (1.0 + eps(i)) * lambda(i) / (1.0 - e2 * lambda(i) / l2);
    record(r, g.gamma1 * lambda(i) - lambda_c(i), slack);
    record(r, lambda_c(i) - upper, slack);
  }
  if (!r.applicable) r.note = "precondition unmet";
  return r;
}

double sin_theta_frobenius(const Hierarchy& h, const EigenBasis& base, const EigenBasis& coarse, Index k) {
  if (base.vectors.cols() < k || coarse.vectors.cols() < k) throw DimensionMismatchError("not enough eigenpairs");
  const Matrix pu = compose_project(h, Matrix(base.vectors.leftCols(k)));
  const Matrix inside = coarse.vectors.leftCols(k).transpose() * pu;
  return std::max(0.0, pu.squaredNorm() - inside.squaredNorm());
}

BoundReport check_theorem_sintheta(double sin2, const Vector& lambda, const Vector& eps, const Gammas& g, Index k,
                                   double slack) {
  BoundReport r;
  if (k < 1 || lambda.size() < k + 1 || eps.size() < k) {
    r.applicable = false;
    r.note = "needs lambda_{k+1}";
    return r;
  }
  const double gap = lambda(k) - lambda(k - 1);
  if (!(gap > 1e-10 * std::max(1.0, lambda(k)))) {
    r.applicable = false;
    r.note = "skipped: zero gap";
    return r;
  }
  double s = 0.0;
  for (Index i = 0; i < k; ++i) s += lambda(i) * ((1.0 + eps(i)) * (1.0 + eps(i)) / g.gamma1 - 1.0);
  s += lambda(k - 1) * eps.head(k).sum();
  record(r, sin2 - s / gap, slack);
  return r;
}

BoundReport lift_lengths_check(const Hierarchy& h, const EigenBasis& base, const Vector& eps, Index k,
                               double slack) {
  BoundReport r;
  if (!orthogonal_projection(h)) {
    r.applicable = false;
    r.note = "precondition unmet: composite projection is oblique";
    return r;
  }
  const Matrix comp = compose_pi_comp(h, Matrix(base.vectors.leftCols(k)));
  for (Index i = 0; i < k; ++i) record(r, comp.col(i).squaredNorm() - eps(i), slack);
  return r;
}

double kmeans_cost(const Matrix& x, const Partition& p) {
  if (x.rows() != p.size_in()) throw DimensionMismatchError("embedding rows must match the partition");
  double total = 0.0;
  for (const auto& s : p.sets()) {
    if (s.size() < 2) continue;
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
    for (const Index i : s) mean += x.row(i);
    mean /= static_cast<double>(s.size());
    for (const Index i : s) total += (x.row(i) - mean).squaredNorm();
  }
  return total;
}

EvalReport evaluate(const Hierarchy& h, Index k, const EigenOptions& opts) {
  require_connected(h.base());
  const Index big = h.base().dim();
  const Index n = h.coarsest().dim();
  if (k < 1 || k > n) throw DimensionMismatchError("k must lie in [1, n]");

  EvalReport out;
  const bool full = big <= kDenseLimit;
  const EigenBasis base = full ? dense_eigenpairs(h.base()) : smallest_eigenpairs(h.base(), std::min(k + 1, big), opts);
  const EigenBasis coarse = n <= kDenseLimit ? dense_eigenpairs(h.coarsest()) : smallest_eigenpairs(h.coarsest(), k, opts);
  out.eig_err = eigenvalue_error(base.values, coarse.values, k);

  if (!h.consistent()) {
    out.eig_err_norm = kNaN;
    out.epsilon = kNaN;
    out.sin_theta = kNaN;
    out.gammas = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    for (BoundReport* b : {&out.interlacing, &out.eigenvalues, &out.sintheta, &out.lift_lengths, &out.isometry}) {
      b->applicable = false;
      b->note = "not a consistent coarsening";
    }
    return out;
  }

  out.eig_err_norm =
      normalized_eigenvalue_error(base.values, smallest_eigenpairs_psd(normalized_operator(h), k, opts).values, k);

  out.eps_profile = restricted_epsilons(h, base, k);
  out.epsilon = out.eps_profile(k - 1);
  out.gammas = interlacing_gammas(h);
  out.sin_theta = sin_theta_frobenius(h, base, coarse, k);

  if (full) {
    out.interlacing = check_interlacing(base.values, coarse.values, out.gammas);
  } else {
    out.interlacing.applicable = false;
    out.interlacing.note = "base spectrum not computed above the dense limit";
  }
  out.eigenvalues = check_theorem_eigenvalues(base.values, coarse.values, out.eps_profile, out.gammas, k);
  out.sintheta = check_theorem_sintheta(out.sin_theta, base.values, out.eps_profile, out.gammas, k);
  out.lift_lengths = lift_lengths_check(h, base, out.eps_profile, k);
  out.isometry = check_corollary_isometry(h, base, k, out.epsilon, 20, 1);
  out.bounds_ok = out.interlacing.ok && out.eigenvalues.ok && out.sintheta.ok && out.lift_lengths.ok &&
                  out.isometry.ok;
  return out;
}

}  // namespace coarsen
