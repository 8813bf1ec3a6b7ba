#include "coarsen/errors.hpp"
#include "coarsen/graph.hpp"

#include "instances.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace coarsen;

namespace {

Matrix dense(const Laplacian& l) { return Matrix(l.matrix()); }

}  // namespace

TEST(WeightedGraph, StoresEdgesCanonically) {
  const WeightedGraph g(3, {{2, 1, 1.5}, {1, 0, 2.0}});
  ASSERT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 2.0}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2, 1.5}));
}

TEST(WeightedGraph, RejectsSelfLoop) { EXPECT_THROW(WeightedGraph(2, {{1, 1, 1.0}}), InvalidGraphError); }

TEST(WeightedGraph, RejectsDuplicatePair) {
  EXPECT_THROW(WeightedGraph(2, {{0, 1, 1.0}, {1, 0, 1.0}}), InvalidGraphError);
}

TEST(WeightedGraph, RejectsIdOutOfRange) {
  EXPECT_THROW(WeightedGraph(2, {{0, 2, 1.0}}), InvalidGraphError);
  EXPECT_THROW(WeightedGraph(2, {{-1, 1, 1.0}}), InvalidGraphError);
}

TEST(WeightedGraph, RejectsBadWeights) {
  EXPECT_THROW(WeightedGraph(2, {{0, 1, 0.0}}), InvalidGraphError);
  EXPECT_THROW(WeightedGraph(2, {{0, 1, -2.0}}), InvalidGraphError);
  EXPECT_THROW(WeightedGraph(2, {{0, 1, std::numeric_limits<double>::infinity()}}), InvalidGraphError);
  EXPECT_THROW(WeightedGraph(2, {{0, 1, std::numeric_limits<double>::quiet_NaN()}}), InvalidGraphError);
}

TEST(WeightedGraph, ReportsIsolatedVertices) {
  const WeightedGraph g(4, {{0, 2, 1.0}});
  EXPECT_EQ(g.isolated_vertices(), (std::vector<Index>{1, 3}));
}

TEST(BuildLaplacian, PathOfThree) {
  Matrix want(3, 3);
  want << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_EQ(dense(build_laplacian(support::path(3))), want);
}

TEST(BuildLaplacian, SingleWeightedEdge) {
  Matrix want(2, 2);
  want << 2.5, -2.5, -2.5, 2.5;
  EXPECT_EQ(dense(build_laplacian(WeightedGraph(2, {{0, 1, 2.5}}))), want);
}

TEST(BuildLaplacian, ToyGraph) {
  Matrix want(5, 5);
  want << 2, -1, -1, 0, 0,  //
      -1, 2, -1, 0, 0,      //
      -1, -1, 4, -1, -1,    //
      0, 0, -1, 1, 0,       //
      0, 0, -1, 0, 1;
  const Laplacian l = build_laplacian(support::toy());
  EXPECT_EQ(dense(l), want);
  EXPECT_TRUE(l.row_sums().isZero(0.0));
}

TEST(BuildLaplacian, MatchesDenseOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto g = support::random_connected(rng, 2 + t % 30, 0.2, support::Weights::real);
    const Matrix want = oracle::laplacian(static_cast<int>(g.num_vertices()), support::edge_list(g));
    EXPECT_TRUE(dense(build_laplacian(g)).isApprox(want, 1e-14)) << "instance " << t;
  }
}

TEST(BuildLaplacian, PropertyRowSumsExactSymmetricPsd) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const auto g = support::random_connected(rng, 2 + t % 49, 0.15, support::Weights::real);
    const Laplacian l = build_laplacian(g);
    EXPECT_TRUE(l.row_sums().isZero(0.0)) << "instance " << t;
    EXPECT_LE((l.apply(Vector(Vector::Ones(l.dim())))).cwiseAbs().maxCoeff(), 1e-14 * l.degrees().maxCoeff()) << "instance " << t;
    const Matrix d = dense(l);
    EXPECT_EQ(d, d.transpose());
    for (Index i = 0; i < d.rows(); ++i) {
      for (Index j = 0; j < d.cols(); ++j) {
        if (i != j) {
          EXPECT_LE(d(i, j), 0.0);
        }
      }
    }
    EXPECT_GE(oracle::eigenvalues(d).minCoeff(), -1e-10) << "instance " << t;
  }
}

TEST(Laplacian, QuadraticFormMatchesEdgeSum) {
  const WeightedGraph g(3, {{0, 1, 2.0}, {1, 2, 0.5}});
  const Vector x = Vector::LinSpaced(3, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(build_laplacian(g).quadratic_form(x), 2.0 * 1.0 + 0.5 * 1.0);
}

TEST(Laplacian, RoundTripsThroughGraph) {
  std::mt19937_64 rng(13);
  const auto g = support::random_connected(rng, 20, 0.2, support::Weights::real);
  EXPECT_EQ(build_laplacian(g).to_graph(), g);
}

TEST(Incidence, SingleUnitEdge) {
  const IncidenceMatrix s = build_incidence(WeightedGraph(2, {{0, 1, 1.0}}));
  Matrix want(1, 2);
  want << 1, -1;
  EXPECT_EQ(Matrix(s.s), want);
  EXPECT_EQ(Matrix(s.s.transpose() * s.s), dense(build_laplacian(WeightedGraph(2, {{0, 1, 1.0}}))));
}

TEST(Incidence, PathOfThree) {
  const auto g = support::path(3);
  const IncidenceMatrix s = build_incidence(g);
  EXPECT_EQ(s.s.rows(), 2);
  EXPECT_EQ(s.s.cols(), 3);
  EXPECT_EQ(Matrix(s.s.transpose() * s.s), dense(build_laplacian(g)));
}

TEST(Incidence, PropertyGramEqualsLaplacian) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    const auto g = support::random_connected(rng, 2 + t % 49, 0.2, support::Weights::real);
    const SparseMatrix s = build_incidence(g).s;
    const Matrix sts = Matrix(s).transpose() * Matrix(s);
    const Matrix l = oracle::laplacian(static_cast<int>(g.num_vertices()), support::edge_list(g));
    EXPECT_LE((sts - l).cwiseAbs().maxCoeff(), 1e-12) << "instance " << t;
  }
}

TEST(Components, PathIsOneComponent) {
  EXPECT_EQ(connected_components(support::path(3)), (std::vector<std::vector<Index>>{{0, 1, 2}}));
}

TEST(Components, TwoDisjointEdges) {
  const WeightedGraph g(4, {{0, 2, 1.0}, {1, 3, 1.0}});
  EXPECT_EQ(connected_components(g), (std::vector<std::vector<Index>>{{0, 2}, {1, 3}}));
  EXPECT_EQ(connected_components(build_laplacian(g)), connected_components(g));
}

TEST(Components, EdgelessGraphGivesSingletons) {
  EXPECT_EQ(connected_components(WeightedGraph(3, {})), (std::vector<std::vector<Index>>{{0}, {1}, {2}}));
}

TEST(Components, InducedSubgraphConnectivity) {
  const Laplacian l = build_laplacian(support::path(4));
  const std::vector<Index> adjacent{1, 2};
  const std::vector<Index> gapped{0, 2};
  EXPECT_TRUE(induces_connected_subgraph(l, adjacent));
  EXPECT_FALSE(induces_connected_subgraph(l, gapped));
}
