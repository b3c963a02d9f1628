#include <gtest/gtest.h>

#include <sstream>

#include "hiddenspace/error.hpp"
#include "hiddenspace/graph.hpp"
#include "oracles.hpp"

using namespace hs;

TEST(ParseEdgeList, TwoEdgePathWithComment) {
  const auto lg = parse_edge_list("% c\n1 2\n2 3");
  EXPECT_EQ(lg.graph.node_count(), 3u);
  EXPECT_EQ(lg.graph.edges(), (std::vector<NodePair>{{0, 1}, {1, 2}}));
  EXPECT_EQ(lg.labels.label(0), "1");
  EXPECT_EQ(lg.labels.id("3"), 2u);
}

TEST(ParseEdgeList, DirectionAndSelfLoopsIgnored) {
  const auto lg = parse_edge_list("1 2\n2 1\n1 1");
  EXPECT_EQ(lg.graph.node_count(), 2u);
  EXPECT_EQ(lg.graph.edges(), (std::vector<NodePair>{{0, 1}}));
}

TEST(ParseEdgeList, NumericPolicyRejectsLabels) {
  ParseOptions opt;
  opt.numeric_labels = true;
  try {
    parse_edge_list("a b\n1 2", opt);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ParseEdgeList, StringLabelsAllowedByDefault) {
  const auto lg = parse_edge_list("b a\na c\n");
  EXPECT_EQ(lg.labels.labels(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(lg.graph.has_edge(0, 1));
  EXPECT_TRUE(lg.graph.has_edge(0, 2));
}

TEST(ParseEdgeList, ExtraColumnsAndHashCommentsIgnored) {
  const auto lg = parse_edge_list("# konect\n10 20 1 1234567\n20 30 1 1234568\n");
  EXPECT_EQ(lg.graph.edge_count(), 2u);
  EXPECT_EQ(lg.labels.labels(), (std::vector<std::string>{"10", "20", "30"}));
}

TEST(ParseEdgeList, NumericLabelsSortNumerically) {
  const auto lg = parse_edge_list("10 9\n9 100\n");
  EXPECT_EQ(lg.labels.labels(), (std::vector<std::string>{"9", "10", "100"}));
}

TEST(ParseEdgeList, MalformedLineReportsLine) {
  try {
    parse_edge_list("1 2\n3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseEdgeList, EmptyInputIsAnError) {
  EXPECT_THROW(parse_edge_list("% only comments\n"), ParseError);
  EXPECT_THROW(parse_edge_list("5 5\n"), ParseError);
}

TEST(ParseEdgeList, MissingFileNamesThePath) {
  try {
    read_edge_list("/nonexistent/graph.txt");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/graph.txt"), std::string::npos);
  }
}

TEST(Graph, InvariantsHoldOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::erdos_renyi(30, 0.15, seed);
    std::size_t degree_sum = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      degree_sum += g.degree(u);
      for (NodeId v : g.neighbors(u)) {
        EXPECT_NE(u, v);
        EXPECT_TRUE(g.has_edge(v, u));
      }
      const auto nb = g.neighbors(u);
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
    }
    EXPECT_EQ(degree_sum, 2 * g.edge_count());
  }
}

TEST(Graph, SerializeParseRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = giant_component(oracle::erdos_renyi(40, 0.1, seed)).graph;
    const auto labels = NodeIdMap::identity(g.node_count());
    std::ostringstream out;
    write_edge_list(out, g, labels, std::vector<std::string>{"round trip"});
    const auto back = parse_edge_list(out.str());
    EXPECT_EQ(back.graph, g);
    EXPECT_EQ(back.labels, labels);
  }
}

TEST(GiantComponent, PicksLargest) {
  // Component sizes 5 and 3.
  const auto g = Graph::from_edges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {5, 6}, {6, 7}});
  const auto gc = giant_component(g);
  EXPECT_EQ(gc.graph.node_count(), 5u);
  EXPECT_EQ(gc.parent_ids, (std::vector<NodeId>{0, 1, 2, 3, 4}));
}

TEST(GiantComponent, SmallerComponentFirstStillLoses) {
  const auto g = Graph::from_edges(8, {{0, 1}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  const auto gc = giant_component(g);
  EXPECT_EQ(gc.graph.node_count(), 5u);
  EXPECT_EQ(gc.parent_ids.front(), 2u);
}

TEST(GiantComponent, TieGoesToSmallestId) {
  const auto g = Graph::from_edges(6, {{3, 4}, {4, 5}, {0, 1}, {1, 2}});
  EXPECT_EQ(giant_component(g).parent_ids, (std::vector<NodeId>{0, 1, 2}));
}

TEST(GiantComponent, ConnectedGraphIsIdentityAndIdempotent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::erdos_renyi(50, 0.06, seed);
    const auto once = giant_component(g);
    const auto twice = giant_component(once.graph);
    EXPECT_EQ(twice.graph, once.graph);
  }
  const auto path = Graph::from_edges(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(giant_component(path).graph, path);
}

TEST(GiantComponent, LabelsFollowSubgraph) {
  const auto lg = parse_edge_list("a b\nc d\nd e\n");
  const auto gc = giant_component(lg.graph);
  const auto labels = lg.labels.restrict(gc.parent_ids);
  EXPECT_EQ(labels.labels(), (std::vector<std::string>{"c", "d", "e"}));
}

TEST(SampleNonEdges, PathHasSingleNonEdge) {
  const auto g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const auto s = sample_non_edges(g, 1, 7);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (NodePair{0, 2}));
}

TEST(SampleNonEdges, CompleteGraphIsAnError) {
  const auto k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_THROW(sample_non_edges(k4, 1, 1), InvalidArgument);
}

TEST(SampleNonEdges, DeterministicAndValid) {
  const auto g = oracle::erdos_renyi(100, 0.05, 3);
  const auto a = sample_non_edges(g, 10'000, 42);
  const auto b = sample_non_edges(g, 10'000, 42);
  EXPECT_EQ(a, b);
  for (const auto& p : a) {
    EXPECT_LT(p.u, p.v);
    EXPECT_FALSE(g.has_edge(p.u, p.v));
  }
  EXPECT_NE(a, sample_non_edges(g, 10'000, 43));
}

TEST(AllNonEdges, CountsComplement) {
  const auto g = oracle::erdos_renyi(25, 0.2, 9);
  const auto ne = all_non_edges(g);
  EXPECT_EQ(ne.size() + g.edge_count(), 25u * 24u / 2u);
  EXPECT_TRUE(std::is_sorted(ne.begin(), ne.end()));
  for (const auto& p : ne) EXPECT_FALSE(g.has_edge(p.u, p.v));
}

TEST(NodeIdMap, CsvExport) {
  const NodeIdMap m({"x", "y"});
  std::ostringstream out;
  m.write_csv(out);
  EXPECT_EQ(out.str(), "original_label,compact_id\nx,0\ny,1\n");
  EXPECT_THROW(m.id("z"), InvalidArgument);
}
