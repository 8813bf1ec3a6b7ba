#include "coarsen/errors.hpp"
#include "coarsen/partition.hpp"

#include "instances.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace coarsen;

namespace {

constexpr double kThird = 1.0 / 3.0;

Partition toy_partition() { return Partition(5, {{0, 1, 2}, {3}, {4}}); }

Matrix dense(const Laplacian& l) { return Matrix(l.matrix()); }

}  // namespace

TEST(Partition, RejectsOverlapGapAndRange) {
  EXPECT_THROW(Partition(3, {{0, 1}, {1, 2}}), InvalidPartitionError);
  EXPECT_THROW(Partition(3, {{0, 1}}), InvalidPartitionError);
  EXPECT_THROW(Partition(3, {{0, 1}, {2, 3}}), InvalidPartitionError);
  EXPECT_THROW(Partition(3, {{0, 1, 2}, {}}), InvalidPartitionError);
}

TEST(Partition, SortsMembersAndRecordsOwners) {
  const Partition p(4, {{3, 1}, {0}, {2}});
  EXPECT_EQ(p.set(0), (std::vector<Index>{1, 3}));
  EXPECT_EQ(p.owner(3), 0);
  EXPECT_EQ(p.owner(2), 2);
  EXPECT_EQ(p.size_out(), 3);
  EXPECT_FALSE(p.is_identity());
  EXPECT_TRUE(Partition::identity(4).is_identity());
}

TEST(Partition, ConnectedSetRequirement) {
  const Laplacian l = build_laplacian(support::path(4));
  EXPECT_NO_THROW(require_connected_sets(l, Partition(4, {{0, 1}, {2, 3}})));
  EXPECT_THROW(require_connected_sets(l, Partition(4, {{0, 2}, {1}, {3}})), DisconnectedSetError);
  EXPECT_THROW(require_connected_sets(l, Partition(3, {{0, 1}, {2}})), DimensionMismatchError);
}

// The five-vertex toy graph contracted along its triangle; every rational
// entry is reproduced bit for bit.
TEST(ToyGolden, CoarseningMatrices) {
  const Partition p = toy_partition();
  Matrix want_p(3, 5);
  want_p << kThird, kThird, kThird, 0, 0,  //
      0, 0, 0, 1, 0,                       //
      0, 0, 0, 0, 1;
  Matrix want_pplus(5, 3);
  want_pplus << 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  EXPECT_EQ(dense_coarsening_matrix(p), want_p);
  EXPECT_EQ(dense_coarsening_pinv(p), want_pplus);
  EXPECT_EQ(Matrix(coarsening_matrix(p)), want_p);
  EXPECT_EQ(Matrix(coarsening_pinv(p)), want_pplus);

  Matrix want_pi = Matrix::Zero(5, 5);
  want_pi.topLeftCorner(3, 3).setConstant(kThird);
  want_pi(3, 3) = want_pi(4, 4) = 1.0;
  Matrix pi_cols(5, 5);
  for (Index c = 0; c < 5; ++c) pi_cols.col(c) = pi(p, Vector(Vector::Unit(5, c)));
  EXPECT_EQ(pi_cols, want_pi);
}

TEST(ToyGolden, CoarseLaplacianProjectionAndLift) {
  const Partition p = toy_partition();
  Matrix want_lc(3, 3);
  want_lc << 2, -1, -1, -1, 1, 0, -1, 0, 1;
  EXPECT_EQ(dense(coarsen_laplacian(build_laplacian(support::toy()), p)), want_lc);

  Vector x(5);
  x << 3, 6, 9, -1, 4;
  Vector want_xc(3);
  want_xc << 6, -1, 4;
  EXPECT_EQ(project(p, x), want_xc);
  Vector want_lifted(5);
  want_lifted << 6, 6, 6, -1, 4;
  EXPECT_EQ(lift(p, project(p, x)), want_lifted);
}

TEST(Project, Examples) {
  const Partition p(3, {{0, 1}, {2}});
  EXPECT_EQ(project(p, Vector(Vector::Unit(3, 0))), Vector((Vector(2) << 0.5, 0.0).finished()));
  EXPECT_EQ(project(p, Vector(Vector::Ones(3))), Vector(Vector::Ones(2)));
  EXPECT_THROW(project(p, Vector(Vector::Ones(2))), DimensionMismatchError);
}

TEST(Lift, Examples) {
  const Partition p(3, {{0, 1}, {2}});
  EXPECT_EQ(lift(p, Vector((Vector(2) << 2.0, 5.0).finished())), Vector((Vector(3) << 2, 2, 5).finished()));
  const Vector x = Vector::LinSpaced(4, -1.0, 2.0);
  EXPECT_EQ(lift(Partition::identity(4), x), x);
  EXPECT_THROW(lift(p, Vector(Vector::Ones(3))), DimensionMismatchError);
}

TEST(CoarsenLaplacian, IdentityAndPathExamples) {
  const Laplacian l = build_laplacian(support::path(3));
  EXPECT_EQ(dense(coarsen_laplacian(l, Partition::identity(3))), dense(l));
  Matrix want(2, 2);
  want << 1, -1, -1, 1;
  EXPECT_EQ(dense(coarsen_laplacian(l, Partition(3, {{0, 1}, {2}}))), want);
  EXPECT_THROW(coarsen_laplacian(l, Partition(2, {{0, 1}})), DimensionMismatchError);
  EXPECT_THROW(coarsen_laplacian(l, Partition(3, {{0, 2}, {1}})), DisconnectedSetError);
}

TEST(PartitionProperties, ProjectionAlgebraOnRandomPartitions) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const auto g = support::random_connected(rng, 2 + t % 49, 0.1, support::Weights::real);
    const Laplacian l = build_laplacian(g);
    const Partition p = support::random_partition(rng, l, 0.5, 6);
    const Matrix pd = dense_coarsening_matrix(p);
    const Matrix pp = dense_coarsening_pinv(p);
    const Index n = l.dim();
    SCOPED_TRACE("instance " + std::to_string(t));

    // Pi is idempotent.
    const Matrix pim = pp * pd;
    EXPECT_LE((pim * pim - pim).cwiseAbs().maxCoeff(), 1e-12);
    // P+ = P^T D^-2 with D(r,r) = ||P(r,:)||.
    const Vector d2 = pd.rowwise().squaredNorm();
    EXPECT_LE((pp - pd.transpose() * d2.cwiseInverse().asDiagonal()).cwiseAbs().maxCoeff(), 1e-12);
    // P+ is also the Moore-Penrose pseudo-inverse.
    EXPECT_LE((pp - oracle::pinv(pd)).cwiseAbs().maxCoeff(), 1e-10);
    // Constants map to constants exactly.
    EXPECT_EQ(project(p, Vector(Vector::Ones(n))), Vector(Vector::Ones(p.size_out())));
    EXPECT_EQ(lift(p, Vector(Vector::Ones(p.size_out()))), Vector(Vector::Ones(n)));
    // Operator views agree with the dense matrices.
    const Vector x = Vector::Random(n);
    EXPECT_LE((pi(p, pi(p, x)) - pi(p, x)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((pi_comp(p, x) - (x - pim * x)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((project(p, x) - pd * x).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PartitionProperties, CoarseLaplacianIsLaplacianAndPreservesCuts) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 200; ++t) {
    const auto g = support::random_connected(rng, 2 + t % 39, 0.15, support::Weights::integer);
    const Laplacian l = build_laplacian(g);
    const Partition p = support::random_partition(rng, l, 0.6, 5);
    const Laplacian lc = coarsen_laplacian(l, p);
    const Matrix d = dense(lc);
    const auto edges = support::edge_list(g);
    const auto sets = support::to_sets(p);
    SCOPED_TRACE("instance " + std::to_string(t));
    EXPECT_TRUE(lc.row_sums().isZero(0.0));
    EXPECT_EQ(d, d.transpose());
    EXPECT_GE(oracle::eigenvalues(d).minCoeff(), -1e-10);
    for (Index r = 0; r < p.size_out(); ++r) {
      for (Index q = 0; q < p.size_out(); ++q) {
        if (r == q) continue;
        EXPECT_EQ(-d(r, q), oracle::cut_weight(edges, sets[static_cast<std::size_t>(r)], sets[static_cast<std::size_t>(q)]));
      }
    }
    const Matrix want = oracle::dense_reduce(oracle::laplacian(static_cast<int>(l.dim()), edges),
                                             oracle::coarsening_matrix(static_cast<int>(l.dim()), sets));
    EXPECT_LE((d - want).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(PartitionProperties, QuadraticFormOnLiftedImage) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 100; ++t) {
    const auto g = support::random_connected(rng, 3 + t % 40, 0.2, support::Weights::real);
    const Laplacian l = build_laplacian(g);
    const Partition p = support::random_partition(rng, l, 0.5, 4);
    const Laplacian lc = coarsen_laplacian(l, p);
    const Vector xc = Vector::Random(p.size_out());
    const Vector x = lift(p, xc);
    const double fine = l.quadratic_form(x);
    EXPECT_NEAR(lc.quadratic_form(xc), fine, 1e-10 * std::max(1.0, fine)) << "instance " << t;
  }
}

TEST(PartitionProperties, NonEqualLiftBreaksLaplacianForm) {
  // With unequal non-zero entries in the lift the reduced operator keeps
  // symmetry but loses zero row sums, so it is no longer a Laplacian.
  const Matrix l = oracle::laplacian(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  Matrix pplus(3, 2);
  pplus << 1.0, 0.0, 2.0, 0.0, 0.0, 1.0;
  const Matrix reduced = pplus.transpose() * l * pplus;
  EXPECT_GT(reduced.rowwise().sum().cwiseAbs().maxCoeff(), 0.5);
}

TEST(PartitionGuard, DenseMatricesAreSizeGuarded) {
  EXPECT_THROW(dense_coarsening_matrix(Partition::identity(kDenseLimit + 1)), SizeGuardError);
  EXPECT_THROW(dense_coarsening_pinv(Partition::identity(kDenseLimit + 1)), SizeGuardError);
}
