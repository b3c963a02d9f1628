#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hiddenspace/embedding.hpp"
#include "hiddenspace/error.hpp"
#include "hiddenspace/rng.hpp"
#include "oracles.hpp"

using namespace hs;

namespace {

const Graph kPath3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
const Graph kTriangle = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});

Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
  return giant_component(oracle::erdos_renyi(n, p, seed)).graph;
}

EmbeddingConfig config(double alpha, std::size_t dim, EigenRoute route = EigenRoute::automatic) {
  EmbeddingConfig c;
  c.alpha = alpha;
  c.dim = dim;
  c.route = route;
  return c;
}

}  // namespace

TEST(Embed, PathThreeAtAlphaOne) {
  // N_1 = [[0,1,0],[1/2,0,1/2],[0,1,0]] has spectrum {1, 0, -1}; v_2 = (1,0,-1)/sqrt 2.
  const auto e = embed(kPath3, config(1.0, 1));
  ASSERT_EQ(e.eigenvalues.size(), 2);
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues[1], 0.0, 1e-12);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(e.coords(0, 0), h, 1e-12);
  EXPECT_NEAR(e.coords(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(e.coords(2, 0), -h, 1e-12);
  EXPECT_NEAR(hs_distance(e, 0, 2), std::sqrt(2.0), 1e-12);
}

TEST(Embed, TriangleDegenerateClusterIsCanonical) {
  // Spectrum {1, -1/2, -1/2}; the tie resolves to the projection of e_0, (2,-1,-1)/sqrt 6.
  for (auto route : {EigenRoute::dense, EigenRoute::automatic}) {
    const auto e = embed(kTriangle, config(1.0, 1, route));
    EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-12);
    EXPECT_NEAR(e.eigenvalues[1], -0.5, 1e-12);
    const double s = std::sqrt(6.0);
    EXPECT_NEAR(e.coords(0, 0), 2 / s, 1e-12);
    EXPECT_NEAR(e.coords(1, 0), -1 / s, 1e-12);
    EXPECT_NEAR(e.coords(2, 0), -1 / s, 1e-12);
  }
  const auto e2 = embed(kTriangle, config(1.0, 2, EigenRoute::dense));
  EXPECT_NEAR(e2.eigenvalues[2], -0.5, 1e-12);
  // Second cluster vector is orthogonal to the first and canonical too: (0,1,-1)/sqrt 2.
  EXPECT_NEAR(e2.coords(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e2.coords(1, 1)), 1 / std::sqrt(2.0), 1e-12);
}

TEST(Embed, AlphaZeroIsAdjacencySpectrum) {
  const auto g = random_connected(40, 0.12, 4);
  const auto e = embed(g, config(0.0, 4));
  const auto size = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (const auto& ed : g.edges()) a(ed.u, ed.v) = a(ed.v, ed.u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  const auto n = a.rows();
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(e.eigenvalues[k], solver.eigenvalues()[n - 1 - k], 1e-10);
  // Coordinates agree with the adjacency eigenvectors up to sign.
  for (int c = 0; c < 4; ++c) {
    const Eigen::VectorXd ref = solver.eigenvectors().col(n - 2 - c);
    const double dot = std::abs(ref.dot(e.coords.col(c)));
    EXPECT_NEAR(dot, 1.0, 1e-8);
  }
}

TEST(Embed, EigenvaluesMatchGeneralSolverOfNormalMatrix) {
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto g = random_connected(45, 0.12, 100 + seed);
      const auto ref = oracle::general_eigenvalues(oracle::dense_normal_matrix(g, alpha));
      for (auto route : {EigenRoute::dense, EigenRoute::iterative}) {
        const auto e = embed(g, config(alpha, 5, route));
        for (int k = 0; k < 6; ++k) EXPECT_NEAR(e.eigenvalues[k], ref[k], 1e-8) << "alpha " << alpha;
      }
    }
  }
}

TEST(Embed, ResidualBoundHoldsOnNormalMatrix) {
  const auto g = random_connected(600, 0.01, 8);
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto e = embed(g, config(alpha, 6));
    EXPECT_LE(e.max_residual, 1e-8);
    const auto n = normal_matrix(g, alpha);
    // Rebuild each retained eigenvector from its coordinate column and check it directly.
    for (int c = 0; c < 6; ++c) {
      const Eigen::VectorXd v = e.coords.col(c);
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
      EXPECT_LE((n * v - e.eigenvalues[c + 1] * v).norm(), 1e-8);
    }
  }
}

TEST(Embed, TrivialPairAtAlphaOne) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = random_connected(80, 0.08, seed);
    for (auto route : {EigenRoute::dense, EigenRoute::iterative}) {
      const auto e = embed(g, config(1.0, 3, route));
      EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-8);
      const Eigen::VectorXd v = e.leading / e.leading.cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], 1.0, 1e-6);
    }
  }
}

TEST(Embed, EigenvaluesDescending) {
  const auto g = random_connected(200, 0.03, 2);
  const auto e = embed(g, config(0.8, 10));
  for (Eigen::Index k = 1; k < e.eigenvalues.size(); ++k) EXPECT_GE(e.eigenvalues[k - 1], e.eigenvalues[k] - 1e-12);
}

TEST(Embed, PermutationInvariance) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto g = random_connected(60, 0.1, 40 + seed);
    const auto n = g.node_count();
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
    std::vector<NodePair> edges;
    for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
    const auto h = Graph::from_edges(n, edges);
    for (auto route : {EigenRoute::dense, EigenRoute::iterative}) {
      const auto a = embed(g, config(0.9, 3, route));
      const auto b = embed(h, config(0.9, 3, route));
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
          EXPECT_NEAR(hs_distance(a, i, j), hs_distance(b, perm[i], perm[j]), 1e-8);
    }
  }
}

TEST(Embed, DistancesFormAMetric) {
  const auto g = random_connected(50, 0.1, 77);
  const auto e = embed(g, config(1.0, 4));
  const auto n = static_cast<NodeId>(g.node_count());
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j) {
      const double dij = hs_distance(e, i, j);
      EXPECT_GE(dij, 0.0);
      EXPECT_DOUBLE_EQ(dij, hs_distance(e, j, i));
      for (NodeId k = 0; k < n; k += 7) EXPECT_LE(dij, hs_distance(e, i, k) + hs_distance(e, k, j) + 1e-12);
    }
}

TEST(Embed, Errors) {
  EXPECT_THROW(embed(kPath3, config(1.0, 3)), InvalidArgument);
  const auto two = Graph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_THROW(embed(two, config(1.0, 1)), InvalidArgument);
  EXPECT_THROW(embed(kPath3, config(1.0, 0)), InvalidArgument);

  const auto g = random_connected(700, 0.01, 1);
  EmbeddingConfig c = config(1.0, 5, EigenRoute::iterative);
  c.max_iter = 30;
  c.eig_tol = 1e-14;
  EXPECT_THROW(embed(g, c), ConvergenceError);
}

TEST(EmbedComponents, CrossComponentPairsAreInfinitelyFar) {
  // Triangle plus path-3: separate spectra, cross pairs unreachable.
  const auto g = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}});
  const auto e = embed_components(g, config(1.0, 1));
  EXPECT_TRUE(std::isinf(hs_distance(e, 0, 3)));
  EXPECT_NEAR(hs_distance(e, 3, 5), std::sqrt(2.0), 1e-12);
  const auto pairs = make_pair_set({{0, 3}, {3, 5}});
  const auto t = hs_scores(e, pairs);
  EXPECT_EQ(t.scores[0], -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(t.scores[1], -std::sqrt(2.0), 1e-12);
}

TEST(EmbedComponents, SmallComponentsArePadded) {
  const auto g = Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 6}});
  const auto e = embed_components(g, config(1.0, 3));
  EXPECT_EQ(e.dim(), 3u);
  // The 2-node component has one non-trivial eigenvector; the rest is zero.
  EXPECT_EQ(e.coords(5, 1), 0.0);
  EXPECT_EQ(e.coords(6, 2), 0.0);
  EXPECT_NEAR(std::abs(e.coords(5, 0)), 1 / std::sqrt(2.0), 1e-12);
}

TEST(HsDistance, BasicCases) {
  Embedding e;
  e.coords = Matrix(2, 2);
  e.coords << 0, 0, 3, 4;
  e.component = {0, 0};
  EXPECT_EQ(hs_distance(e, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(hs_distance(e, 0, 1), 5.0);
  EXPECT_THROW(hs_distance(e, 0, 2), InvalidArgument);
}

TEST(HsScores, SignConvention) {
  const auto e = embed(kPath3, config(1.0, 1));
  const auto t = hs_scores(e, make_pair_set({{0, 2}}));
  EXPECT_NEAR(t.scores[0], -std::sqrt(2.0), 1e-12);

  Embedding same;
  same.coords = Matrix::Zero(2, 2);
  same.component = {0, 0};
  EXPECT_EQ(hs_scores(same, make_pair_set({{0, 1}})).scores[0], 0.0);
}

TEST(EmbeddingOutput, CoordinateCsvAndEigenvalueJson) {
  const auto e = embed(kPath3, config(1.0, 1));
  Metadata meta;
  meta.set("alpha", 1.0).set("seed", 7);
  std::ostringstream csv, json;
  write_coordinates_csv(csv, e, NodeIdMap({"a", "b", "c"}), meta);
  const auto text = csv.str();
  EXPECT_NE(text.find("# alpha=1\n# seed=7\nnode_label,c_1\na,0.7071067811865"), std::string::npos);
  write_eigenvalues_json(json, e, meta);
  EXPECT_NE(json.str().find("\"eigenvalues\""), std::string::npos);
}
