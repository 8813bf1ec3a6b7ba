#include "coarsen/eigensolver.hpp"
#include "coarsen/errors.hpp"

#include "instances.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace coarsen;

namespace {

void expect_valid(const EigenBasis& b, const Laplacian& l, double tol) {
  const Index k = b.values.size();
  ASSERT_EQ(b.vectors.cols(), k);
  EXPECT_LE((b.vectors.transpose() * b.vectors - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-8);
  for (Index i = 0; i < k; ++i) {
    EXPECT_LE((l.apply(Vector(b.vectors.col(i))) - b.values(i) * b.vectors.col(i)).norm(), tol) << "pair " << i;
    EXPECT_LE(b.residuals(i), tol);
    if (i > 0) {
      EXPECT_LE(b.values(i - 1), b.values(i) + 1e-12);
    }
  }
}

}  // namespace

TEST(SmallestEigenpairs, PathOfThree) {
  const Laplacian l = build_laplacian(support::path(3));
  const EigenBasis b = smallest_eigenpairs(l, 3);
  EXPECT_EQ(b.values(0), 0.0);
  EXPECT_NEAR(b.values(1), 1.0, 1e-12);
  EXPECT_NEAR(b.values(2), 3.0, 1e-12);
  EXPECT_EQ(b.vectors.col(0), Vector::Constant(3, 1.0 / std::sqrt(3.0)));
  expect_valid(b, l, 1e-10);
}

TEST(SmallestEigenpairs, CycleOfFourFollowsCirculantFormula) {
  const Laplacian l = build_laplacian(support::cycle(4));
  const EigenBasis b = smallest_eigenpairs(l, 4);
  const Vector want = (Vector(4) << 0.0, 2.0, 2.0, 4.0).finished();
  EXPECT_LE((b.values - want).cwiseAbs().maxCoeff(), 1e-12);
  expect_valid(b, l, 1e-10);
}

TEST(SmallestEigenpairs, SingleWeightedEdge) {
  const Laplacian l = build_laplacian(WeightedGraph(2, {{0, 1, 3.5}}));
  const EigenBasis b = smallest_eigenpairs(l, 2);
  EXPECT_EQ(b.values(0), 0.0);
  EXPECT_NEAR(b.values(1), 7.0, 1e-12);
}

TEST(SmallestEigenpairs, RejectsTooManyPairs) {
  EXPECT_THROW(smallest_eigenpairs(build_laplacian(support::path(3)), 4), DimensionMismatchError);
}

TEST(SmallestEigenpairs, DisconnectedGraphHasIndicatorNullSpace) {
  const Laplacian l = build_laplacian(WeightedGraph(5, {{0, 1, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}}));
  const EigenBasis b = smallest_eigenpairs(l, 3);
  EXPECT_EQ(b.values(0), 0.0);
  EXPECT_EQ(b.values(1), 0.0);
  EXPECT_NEAR(b.values(2), 1.0, 1e-12);
  Vector first = Vector::Zero(5);
  first.head(2).setConstant(1.0 / std::sqrt(2.0));
  EXPECT_EQ(b.vectors.col(0), first);
  const Matrix z = null_basis(l);
  EXPECT_EQ(z.cols(), 2);
  EXPECT_LE((z.transpose() * z - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SmallestEigenpairs, PropertyDenseAgreesWithOracle) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 40; ++t) {
    const auto g = support::random_connected(rng, 2 + t * 3, 0.1, support::Weights::real);
    const Laplacian l = build_laplacian(g);
    const Index k = std::min<Index>(l.dim(), 6);
    const EigenBasis b = smallest_eigenpairs(l, k);
    const Vector want = oracle::eigenvalues(Matrix(l.matrix())).head(k);
    EXPECT_LE((b.values - want).cwiseAbs().maxCoeff(), 1e-9) << "instance " << t;
    expect_valid(b, l, 1e-8);
  }
}

TEST(SmallestEigenpairs, IterativePathAgreesWithDense) {
  std::mt19937_64 rng(62);
  for (const Index n : {600, 900}) {
    const auto g = support::random_connected(rng, n, 4.0 / static_cast<double>(n), support::Weights::real);
    const Laplacian l = build_laplacian(g);
    EigenOptions opts;
    ASSERT_GT(n, opts.dense_limit);
    const EigenBasis b = smallest_eigenpairs(l, 8, opts);
    const Vector want = oracle::eigenvalues(Matrix(l.matrix())).head(8);
    EXPECT_LE((b.values - want).cwiseAbs().maxCoeff(), 1e-8) << "n " << n;
    expect_valid(b, l, opts.tol * 1.0001);
  }
}

TEST(SmallestEigenpairs, IterativePathOnCycleWithMultiplicity) {
  // Cycle eigenvalues 2 - 2cos(2 pi j / n) are double for 0 < j < n/2.
  const Index n = 700;
  const Laplacian l = build_laplacian(support::cycle(n));
  const EigenBasis b = smallest_eigenpairs(l, 5);
  const double pi = std::numbers::pi;
  const Vector want = (Vector(5) << 0.0, 2 - 2 * std::cos(2 * pi / n), 2 - 2 * std::cos(2 * pi / n),
                       2 - 2 * std::cos(4 * pi / n), 2 - 2 * std::cos(4 * pi / n))
                          .finished();
  EXPECT_LE((b.values - want).cwiseAbs().maxCoeff(), 1e-9);
  expect_valid(b, l, 1e-8 * 1.0001);
}

TEST(SmallestEigenpairs, Deterministic) {
  std::mt19937_64 rng(63);
  const Laplacian l = build_laplacian(support::random_connected(rng, 700, 0.006, support::Weights::unit));
  const EigenBasis a = smallest_eigenpairs(l, 6);
  const EigenBasis b = smallest_eigenpairs(l, 6);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(LargestEigenpair, DenseAndIterative) {
  std::mt19937_64 rng(64);
  for (const Index n : {50, 800}) {
    const Laplacian l = build_laplacian(support::random_connected(rng, n, 5.0 / static_cast<double>(n), support::Weights::real));
    const EigenBasis b = largest_eigenpair(l);
    const double want = oracle::eigenvalues(Matrix(l.matrix())).maxCoeff();
    EXPECT_NEAR(b.values(0), want, 1e-8 * want) << "n " << n;
    EXPECT_LE((l.apply(Vector(b.vectors.col(0))) - b.values(0) * b.vectors.col(0)).norm(), 1e-7);
  }
}

TEST(PsdEigenpairs, GeneralSymmetricMatrix) {
  std::mt19937_64 rng(65);
  for (const Index n : {40, 700}) {
    const Laplacian l = build_laplacian(support::random_connected(rng, n, 5.0 / static_cast<double>(n), support::Weights::real));
    // D^-1/2 L D^-1/2 has no constant null vector.
    const Vector d = l.degrees().cwiseSqrt().cwiseInverse();
    const SparseMatrix m = d.asDiagonal() * l.matrix() * d.asDiagonal();
    const EigenBasis b = smallest_eigenpairs_psd(m, 5);
    const Vector want = oracle::eigenvalues(Matrix(m)).head(5);
    EXPECT_LE((b.values - want).cwiseAbs().maxCoeff(), 1e-8) << "n " << n;
    for (Index i = 0; i < 5; ++i) EXPECT_LE((m * b.vectors.col(i) - b.values(i) * b.vectors.col(i)).norm(), 1e-8 * 1.0001);
  }
  EXPECT_THROW(smallest_eigenpairs_psd(SparseMatrix(2, 3), 1), DimensionMismatchError);
}

TEST(DenseEigenpairs, FullSpectrum) {
  const Laplacian l = build_laplacian(support::complete(5));
  const EigenBasis b = dense_eigenpairs(l);
  EXPECT_EQ(b.values(0), 0.0);
  for (Index i = 1; i < 5; ++i) EXPECT_NEAR(b.values(i), 5.0, 1e-12);
  expect_valid(b, l, 1e-10);
}
