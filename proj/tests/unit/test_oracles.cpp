// Checks of the brute-force references on hand-derived values, so the
// property tests that lean on them compare against something trusted.

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using oracle::Mat;

TEST(OracleReduce, ToyGraphAlongTriangle) {
  const Mat l = oracle::laplacian(5, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {2, 4, 1.0}});
  const Mat p = oracle::coarsening_matrix(5, {{0, 1, 2}, {3}, {4}});
  Mat want(3, 3);
  want << 2, -1, -1, -1, 1, 0, -1, 0, 1;
  EXPECT_LE((oracle::dense_reduce(l, p) - want).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((oracle::dense_reduce(l, Mat::Identity(5, 5)) - l).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(OracleReduce, PinvOfRectangular) {
  Mat p(1, 2);
  p << 0.5, 0.5;
  Mat want(2, 1);
  want << 1.0, 1.0;
  EXPECT_LE((oracle::pinv(p) - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(OracleConductance, SmallGraphs) {
  EXPECT_DOUBLE_EQ(oracle::conductance_k2(2, {{0, 1, 1.0}}), 1.0);
  EXPECT_DOUBLE_EQ(oracle::conductance_k2(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 1.0);
  // Two triangles joined by a bridge: cut 1 over volume 7.
  const oracle::EdgeList barbell{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {3, 4, 1.0},
                                 {3, 5, 1.0}, {4, 5, 1.0}, {2, 3, 1.0}};
  EXPECT_DOUBLE_EQ(oracle::conductance_k2(6, barbell), 1.0 / 7.0);
}

TEST(OracleNmeans, Examples) {
  Mat x(4, 1);
  x << 0, 1, 10, 11;
  EXPECT_EQ(oracle::optimal_nmeans(x, 4), 0.0);
  EXPECT_DOUBLE_EQ(oracle::optimal_nmeans(x, 2), 1.0);
  Mat y(3, 2);
  y << 1, 2, 1, 2, 7, 0;
  EXPECT_EQ(oracle::optimal_nmeans(y, 2), 0.0);
  EXPECT_DOUBLE_EQ(oracle::kmeans_pairwise(x, {{0, 1}, {2, 3}}), 1.0);
}

TEST(OracleCutWeight, Examples) {
  const oracle::EdgeList toy{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {2, 4, 1.0}};
  EXPECT_EQ(oracle::cut_weight(toy, {0, 1, 2}, {3}), 1.0);
  EXPECT_EQ(oracle::cut_weight(toy, {0, 1}, {3, 4}), 0.0);
  EXPECT_THROW(oracle::cut_weight(toy, {0, 1}, {1, 2}), std::invalid_argument);
}

TEST(OracleSchur, PathMiddleEliminated) {
  const Mat l = oracle::laplacian(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  Mat want(2, 2);
  want << 0.5, -0.5, -0.5, 0.5;
  EXPECT_LE((oracle::schur(l, {0, 2}) - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(OracleLocalCost, PathOfThree) {
  // A = U_2 Lambda^{-1/2} on P3: columns 0 and (1, 0, -1) / sqrt(2).
  Mat a = Mat::Zero(3, 2);
  a(0, 1) = 1.0 / std::sqrt(2.0);
  a(2, 1) = -1.0 / std::sqrt(2.0);
  EXPECT_NEAR(oracle::local_cost(3, {{0, 1, 1.0}, {1, 2, 1.0}}, a, {0, 1}), 0.75, 1e-12);
}

TEST(OracleRestrictedEps, PathOfThree) {
  const Mat l = oracle::laplacian(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const Mat p = oracle::coarsening_matrix(3, {{0, 1}, {2}});
  EXPECT_NEAR(oracle::restricted_eps(l, p, oracle::pinv(p), 2), std::sqrt(5.0 / 8.0), 1e-12);
  EXPECT_NEAR(oracle::restricted_eps(l, p, oracle::pinv(p), 1), 0.0, 1e-12);
}
