#include <gtest/gtest.h>

#include <sstream>

#include "netpolicy/errors.hpp"
#include "netpolicy/graph_io.hpp"
#include "support.hpp"

using namespace netpolicy;

TEST(Graph, AddRemoveToggle) {
  Graph g(4);
  EXPECT_TRUE(g.add_edge(0, 1));
  EXPECT_FALSE(g.add_edge(1, 0));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_FALSE(g.toggle_edge(0, 1));
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_TRUE(g.toggle_edge(2, 3));
  EXPECT_FALSE(g.remove_edge(0, 3));
  EXPECT_THROW(g.add_edge(2, 2), InvalidInput);
  EXPECT_THROW(g.add_edge(0, 4), InvalidInput);
}

TEST(Graph, CommonNeighbors) {
  Graph g = oracle::complete(5);
  EXPECT_EQ(g.common_neighbors(0, 1), 3);
  g.remove_edge(0, 2);
  EXPECT_EQ(g.common_neighbors(0, 1), 2);
}

TEST(Metrics, Triangle) {
  const GraphMetrics m = graph_metrics(oracle::complete(3));
  EXPECT_DOUBLE_EQ(m.density, 1.0);
  EXPECT_DOUBLE_EQ(m.mean_degree, 2.0);
  EXPECT_DOUBLE_EQ(m.transitivity, 1.0);
}

TEST(Metrics, PathHasNoClosedTriple) {
  EXPECT_DOUBLE_EQ(global_transitivity(oracle::path(3)), 0.0);
  EXPECT_DOUBLE_EQ(global_transitivity(Graph(5)), 0.0);
}

TEST(Metrics, SmallGraphs) {
  EXPECT_DOUBLE_EQ(graph_metrics(Graph(1)).density, 0.0);
  EXPECT_DOUBLE_EQ(graph_metrics(Graph(0)).mean_degree, 0.0);
}

TEST(Metrics, TransitivityMatchesTripleCount) {
  Rng rng = make_rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 12));
    const Graph g = oracle::random_graph(n, uniform01(rng), rng);
    EXPECT_NEAR(global_transitivity(g), oracle::transitivity(g), 1e-12);
  }
}

TEST(Metrics, ReferenceScaleDensity) {
  const Graph g = generate_scale_free(300, 2.5, 6.0, 5);
  const GraphMetrics m = graph_metrics(g);
  EXPECT_EQ(m.edges, 900u);
  EXPECT_NEAR(m.density, 0.020, 5e-4);
  EXPECT_DOUBLE_EQ(m.mean_degree, 6.0);
}

TEST(Metrics, DistancesFromSet) {
  const Graph g = oracle::path(5);
  const std::vector<NodeId> src{0};
  EXPECT_EQ(distances_from(g, src), (std::vector<int>{0, 1, 2, 3, 4}));
  Graph h(3);
  h.add_edge(0, 1);
  EXPECT_EQ(distances_from(h, src), (std::vector<int>{0, 1, -1}));
  EXPECT_EQ(connected_components(h), 2);
}

TEST(Divergence, KnownValues) {
  const DegreeDistribution p({{1, 0.5}, {2, 0.5}});
  const DegreeDistribution q({{1, 1.0}});
  EXPECT_NEAR(jensen_shannon_divergence(p, q).value, 0.2157, 1e-4);
  EXPECT_NEAR(jensen_shannon_divergence(p, q).value, oracle::jsd(p.mass(), q.mass()), 1e-14);
  EXPECT_DOUBLE_EQ(jensen_shannon_divergence(p, p).value, 0.0);
  const DegreeDistribution a({{0, 1.0}}), b({{1, 1.0}});
  EXPECT_NEAR(jensen_shannon_divergence(a, b).value, std::log(2.0), 1e-15);
  EXPECT_STREQ(jensen_shannon_divergence(a, b).log_base, "e");
}

TEST(Divergence, RangeAndSymmetry) {
  Rng rng = make_rng(3);
  for (int t = 0; t < 300; ++t) {
    std::vector<int> d1, d2;
    for (int k = 0; k < 20; ++k) d1.push_back(static_cast<int>(uniform_index(rng, 8)));
    for (int k = 0; k < 15; ++k) d2.push_back(static_cast<int>(uniform_index(rng, 12)));
    const auto p = DegreeDistribution::from_degrees(d1);
    const auto q = DegreeDistribution::from_degrees(d2);
    const double v = jensen_shannon_divergence(p, q).value;
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, std::log(2.0) + 1e-12);
    EXPECT_NEAR(v, jensen_shannon_divergence(q, p).value, 1e-15);
    EXPECT_NEAR(v, oracle::jsd(p.mass(), q.mass()), 1e-12);
  }
}

TEST(Divergence, RejectsBadMass) {
  EXPECT_THROW(DegreeDistribution({{1, 0.7}}), InvalidInput);
  EXPECT_THROW(DegreeDistribution({{1, 1.5}, {2, -0.5}}), InvalidInput);
}

TEST(TieChanges, ReferenceTable) {
  TieChangeTable t{43948, 2, 0, 900};
  EXPECT_NEAR(jaccard(t).value, 900.0 / 902.0, 1e-15);
  EXPECT_NEAR(jaccard(t).value, 0.998, 5e-4);
  EXPECT_DOUBLE_EQ(jaccard({100, 1, 1, 2}).value, 0.5);
  const JaccardIndex empty = jaccard({10, 0, 0, 0});
  EXPECT_DOUBLE_EQ(empty.value, 1.0);
  EXPECT_TRUE(empty.undefined);
}

TEST(TieChanges, CountsDyads) {
  const Graph g = generate_scale_free(300, 2.5, 6.0, 1);
  const TieChangeTable same = tie_change_table(g, g);
  EXPECT_EQ(same.n11, 900u);
  EXPECT_EQ(same.total(), 300u * 299u / 2u);
  EXPECT_DOUBLE_EQ(jaccard(same).value, 1.0);

  Graph a = oracle::path(4), b = oracle::path(4);
  b.remove_edge(0, 1);
  b.add_edge(0, 3);
  const TieChangeTable t = tie_change_table(a, b);
  EXPECT_EQ(t.n01, 1u);
  EXPECT_EQ(t.n10, 1u);
  EXPECT_EQ(t.n11, 2u);
  EXPECT_EQ(t.n00, 2u);
  EXPECT_THROW(tie_change_table(Graph(3), Graph(4)), InvalidInput);
}

TEST(Generator, ExactEdgeCountAndSimple) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate_scale_free(300, 2.5, 6.0, seed);
    EXPECT_EQ(g.num_edges(), 900u);
    for (auto [u, v] : g.edge_list()) EXPECT_LT(u, v);
  }
}

TEST(Generator, Deterministic) {
  EXPECT_EQ(generate_scale_free(200, 2.5, 4.0, 9), generate_scale_free(200, 2.5, 4.0, 9));
  EXPECT_NE(generate_scale_free(200, 2.5, 4.0, 9), generate_scale_free(200, 2.5, 4.0, 10));
}

TEST(Generator, Degenerate) {
  const Graph g = generate_scale_free(1, 2.5, 0.0, 1);
  EXPECT_EQ(g.num_nodes(), 1);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_THROW(generate_scale_free(0, 2.5, 1.0, 1), InvalidInput);
  EXPECT_THROW(generate_scale_free(10, 1.0, 1.0, 1), InvalidInput);
  EXPECT_THROW(generate_scale_free(10, 2.5, 10.0, 1), InvalidInput);
  EXPECT_THROW(generate_scale_free(10, 2.5, -1.0, 1), InvalidInput);
}

TEST(Generator, TailExponent) {
  const Graph g = generate_scale_free(10000, 2.5, 6.0, 2024);
  const double fit = oracle::power_law_exponent(g.degrees(), 6);
  EXPECT_NEAR(fit, 2.5, 0.2);
}

TEST(GraphIo, RoundTrip) {
  const Graph g = generate_scale_free(50, 2.5, 4.0, 3);
  std::stringstream buf;
  write_edge_list(buf, g);
  EXPECT_EQ(read_edge_list(buf), g);
}

TEST(GraphIo, Rejects) {
  std::stringstream missing("0 1\n");
  EXPECT_THROW(read_edge_list(missing), ParseError);
  std::stringstream bad("n=3\n0 x\n");
  EXPECT_THROW(read_edge_list(bad), ParseError);
  std::stringstream range("n=3\n0 7\n");
  EXPECT_THROW(read_edge_list(range), ParseError);
}
