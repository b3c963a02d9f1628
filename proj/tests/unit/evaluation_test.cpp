#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "hiddenspace/error.hpp"
#include "hiddenspace/evaluation.hpp"
#include "hiddenspace/rng.hpp"
#include "oracles.hpp"

using namespace hs;

namespace {

Graph ring_with_chords(std::size_t n, std::uint64_t seed) {
  std::vector<NodePair> edges;
  for (NodeId i = 0; i < n; ++i) edges.push_back(NodePair::make(i, static_cast<NodeId>((i + 1) % n)));
  Rng rng(seed);
  for (std::size_t c = 0; c < n; ++c) {
    const auto u = static_cast<NodeId>(rng.index(n)), v = static_cast<NodeId>(rng.index(n));
    if (u != v) edges.push_back(NodePair::make(u, v));
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST(RandomSplit, SizesAndPartition) {
  std::vector<NodePair> edges;
  for (NodeId i = 0; i < 100; ++i) edges.push_back({i, static_cast<NodeId>((i + 1) % 100)});
  const auto g = Graph::from_edges(100, edges);
  ASSERT_EQ(g.edge_count(), 100u);
  const auto s = random_split(g, 0.1, 3);
  EXPECT_EQ(s.probe.size(), 10u);
  EXPECT_EQ(s.train.edge_count(), 90u);
  std::unordered_set<std::uint64_t> seen;
  for (const auto& p : s.probe) {
    EXPECT_TRUE(g.has_edge(p.u, p.v));
    seen.insert(p.key());
  }
  for (const auto& e : s.train.edges()) {
    const auto parent = NodePair::make(s.retained[e.u], s.retained[e.v]);
    EXPECT_TRUE(g.has_edge(parent.u, parent.v));
    EXPECT_FALSE(seen.count(parent.key()));
  }
  for (NodeId i = 0; i < s.train.node_count(); ++i) EXPECT_GE(s.train.degree(i), 1u);
}

TEST(RandomSplit, AtLeastOneProbeEdge) {
  std::vector<NodePair> edges;
  for (NodeId i = 0; i < 10; ++i) edges.push_back({i, static_cast<NodeId>(i + 1)});
  const auto g = Graph::from_edges(11, edges);
  EXPECT_EQ(random_split(g, 0.05, 1).probe.size(), 1u);
}

TEST(RandomSplit, DeterministicInSeed) {
  const auto g = ring_with_chords(80, 2);
  const auto a = random_split(g, 0.2, 9), b = random_split(g, 0.2, 9);
  EXPECT_EQ(a.probe, b.probe);
  EXPECT_EQ(a.train, b.train);
  EXPECT_NE(random_split(g, 0.2, 10).probe, a.probe);
}

TEST(RandomSplit, ScorableProbeUsesTrainIds) {
  const auto g = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_split(g, 0.4, seed);
    std::size_t expected = 0;
    for (const auto& p : s.probe) {
      const auto iu = std::find(s.retained.begin(), s.retained.end(), p.u);
      const auto iv = std::find(s.retained.begin(), s.retained.end(), p.v);
      if (iu != s.retained.end() && iv != s.retained.end()) ++expected;
    }
    EXPECT_EQ(s.scorable_probe.size(), expected);
    for (const auto& p : s.scorable_probe) EXPECT_FALSE(s.train.has_edge(p.u, p.v));
  }
}

TEST(RandomSplit, Errors) {
  const auto g = ring_with_chords(20, 1);
  EXPECT_THROW(random_split(g, 0.0, 1), InvalidArgument);
  EXPECT_THROW(random_split(g, 1.0, 1), InvalidArgument);
  EXPECT_THROW(random_split(Graph::from_edges(2, {}), 0.1, 1), InvalidArgument);
}

TEST(Auc, PerfectAndConstantScores) {
  const auto pairs = make_pair_set({{0, 1}, {0, 2}, {1, 2}, {1, 3}});
  ScoreTable good{"x", pairs, {5, 4, 1, 0}};
  ScoreTable flat{"x", pairs, {1, 1, 1, 1}};
  const std::vector<NodePair> probe = {{0, 1}, {0, 2}}, non = {{1, 2}, {1, 3}};
  EXPECT_DOUBLE_EQ(auc(good, probe, non, AucMode::exact), 1.0);
  EXPECT_DOUBLE_EQ(auc(good, probe, non, AucMode::sampled, 1000, 1), 1.0);
  EXPECT_DOUBLE_EQ(auc(flat, probe, non, AucMode::exact), 0.5);
  EXPECT_DOUBLE_EQ(auc(flat, probe, non, AucMode::sampled, 1000, 1), 0.5);
}

TEST(Auc, CountsWinsAndTies) {
  // One probe score against 100 non-edges: 70 lower, 20 equal, 10 higher.
  std::vector<double> non(70, 0.0);
  non.insert(non.end(), 20, 1.0);
  non.insert(non.end(), 10, 2.0);
  const std::vector<double> probe = {1.0};
  EXPECT_DOUBLE_EQ(auc_exact(probe, non), 0.8);
  EXPECT_DOUBLE_EQ(oracle::brute_force_auc(probe, non), 0.8);
}

TEST(Auc, ExactMatchesBruteForceAndSampledConverges) {
  Rng rng(4);
  std::vector<double> probe(200), non(3000);
  for (auto& x : probe) x = std::floor(rng.uniform() * 20) + 3;  // ties on purpose
  for (auto& x : non) x = std::floor(rng.uniform() * 20);
  const double exact = auc_exact(probe, non);
  EXPECT_NEAR(exact, oracle::brute_force_auc(probe, non), 1e-12);
  EXPECT_NEAR(auc_sampled(probe, non, 200000, 5), exact, 0.01);
  EXPECT_EQ(auc_sampled(probe, non, 1000, 5), auc_sampled(probe, non, 1000, 5));
}

TEST(Auc, InfiniteScoresCompareAsTies) {
  const double ninf = -std::numeric_limits<double>::infinity();
  EXPECT_DOUBLE_EQ(auc_exact(std::vector<double>{ninf}, std::vector<double>{ninf, -1.0}), 0.25);
}

TEST(Precision, TopL) {
  std::vector<NodePair> pairs;
  std::vector<double> scores;
  for (NodeId i = 1; i <= 20; ++i) {
    pairs.push_back({0, i});
    scores.push_back(100.0 - i);
  }
  ScoreTable t{"x", make_pair_set(pairs), scores};
  // Hits at ranks 1, 4, 7 among the top 10.
  const std::vector<NodePair> probe = {{0, 1}, {0, 4}, {0, 7}, {0, 15}};
  EXPECT_DOUBLE_EQ(precision_at(t, probe, 10), 0.3);
  EXPECT_DOUBLE_EQ(precision_at(t, std::vector<NodePair>{{0, 1}, {0, 2}}, 2), 1.0);
  EXPECT_THROW(precision_at(t, probe, 0), InvalidArgument);
}

TEST(Precision, ConstantScoresBreakTiesLexicographically) {
  const auto g = oracle::erdos_renyi(20, 0.2, 6);
  auto pairs = all_non_edges(g);
  Rng rng(1);
  std::shuffle(pairs.begin(), pairs.end(), std::mt19937_64(rng.next()));
  ScoreTable t{"x", make_pair_set(pairs), std::vector<double>(pairs.size(), 1.0)};
  std::vector<NodePair> probe;
  for (std::size_t i = 0; i < pairs.size(); i += 5) probe.push_back(pairs[i]);
  auto sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t l : {1u, 7u, 30u}) {
    std::unordered_set<std::uint64_t> in_probe;
    for (const auto& p : probe) in_probe.insert(p.key());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < l; ++i) hits += in_probe.count(sorted[i].key());
    EXPECT_DOUBLE_EQ(precision_at(t, probe, l), static_cast<double>(hits) / static_cast<double>(l));
  }
}

TEST(Precision, InvariantUnderMonotoneTransforms) {
  Rng rng(3);
  std::vector<NodePair> pairs;
  std::vector<double> s, s2;
  for (NodeId i = 1; i < 300; ++i) {
    pairs.push_back({0, i});
    s.push_back(std::floor(rng.uniform() * 50));
    s2.push_back(std::exp(0.1 * s.back()) - 7.0);
  }
  const auto ps = make_pair_set(pairs);
  std::vector<NodePair> probe(pairs.begin(), pairs.begin() + 40);
  ScoreTable a{"a", ps, s}, b{"b", ps, s2};
  EXPECT_EQ(precision_at(a, probe, 40), precision_at(b, probe, 40));
  std::vector<NodePair> non(pairs.begin() + 40, pairs.end());
  EXPECT_DOUBLE_EQ(auc(a, probe, non, AucMode::exact), auc(b, probe, non, AucMode::exact));
}

TEST(Methods, Parsing) {
  EXPECT_EQ(parse_method("cn").kind, MethodSpec::Kind::cn);
  EXPECT_EQ(parse_method("KATZ").kind, MethodSpec::Kind::katz);
  const auto h = parse_method("hybrid:RA");
  EXPECT_EQ(h.kind, MethodSpec::Kind::hybrid);
  EXPECT_EQ(h.base, MethodSpec::Kind::ra);
  try {
    parse_method("pagerank");
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("Jaccard"), std::string::npos);
  }
  EXPECT_THROW(parse_method("hybrid:HS"), InvalidArgument);
}

TEST(Experiment, ReportsComposeFromSingleRepetitions) {
  const auto g = ring_with_chords(60, 5);
  ExperimentConfig c;
  c.repetitions = 3;
  c.seed = 11;
  c.auc_mode = AucMode::exact;
  const auto reports = run_experiment(g, {parse_method("CN")}, c);
  ASSERT_EQ(reports.size(), 1u);
  ASSERT_FALSE(reports[0].error);
  ASSERT_EQ(reports[0].auc_values.size(), 3u);
  double mean = 0;
  for (std::size_t rep = 0; rep < 3; ++rep) {
    const auto rep_seed = derive_seed(c.seed, rep);
    const auto split = random_split(g, c.probe_fraction, derive_seed(rep_seed, "split"));
    auto non = all_non_edges(split.train);
    std::erase_if(non, [&](const NodePair& p) {
      return std::find(split.scorable_probe.begin(), split.scorable_probe.end(), p) != split.scorable_probe.end();
    });
    const auto t = cn_scores(split.train, make_pair_set(non));
    std::vector<double> ps, ns;
    for (const auto& p : split.scorable_probe) ps.push_back(cn_scores(split.train, make_pair_set({p})).scores[0]);
    ns = t.scores;
    const double a = oracle::brute_force_auc(ps, ns);
    EXPECT_NEAR(reports[0].auc_values[rep], a, 1e-12);
    mean += a / 3;
  }
  EXPECT_NEAR(reports[0].auc, mean, 1e-12);
}

TEST(Experiment, RandomScoresGiveOneHalf) {
  const auto g = ring_with_chords(150, 8);
  ExperimentConfig c;
  c.repetitions = 10;
  const auto r = run_experiment(g, {parse_method("random")}, c);
  EXPECT_NEAR(r[0].auc, 0.5, 0.02);
}

TEST(Experiment, BitIdenticalReruns) {
  const auto g = ring_with_chords(70, 1);
  ExperimentConfig c;
  c.repetitions = 4;
  const std::vector<MethodSpec> methods = {parse_method("CN"), parse_method("HS"), parse_method("hybrid:CN")};
  std::ostringstream a, b;
  write_reports_json(a, run_experiment(g, methods, c), "ring", Metadata{});
  write_reports_json(b, run_experiment(g, methods, c), "ring", Metadata{});
  EXPECT_EQ(a.str(), b.str());
}

TEST(Experiment, FailingMethodIsReportedNotFatal) {
  // A tree of 3 nodes leaves too few edges for SPM perturbation.
  const auto g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  ExperimentConfig c;
  c.repetitions = 2;
  c.probe_fraction = 0.2;
  const auto r = run_experiment(g, {parse_method("SPM"), parse_method("CN")}, c);
  EXPECT_TRUE(r[0].error);
  EXPECT_FALSE(r[1].error);
}
