#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <functional>
#include <numeric>
#include <set>

#include "netpolicy/errors.hpp"
#include "netpolicy/sampling.hpp"
#include "support.hpp"

using namespace netpolicy;

namespace {

double modularity_reference(const Graph& g, const std::vector<int>& c) {
  const int n = g.num_nodes();
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  double q = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (c[i] == c[j])
        q += (g.has_edge(i, j) ? 1.0 : 0.0) - g.degree(i) * g.degree(j) / two_m;
  return q / two_m;
}

// Restricted growth strings enumerate each set partition once.
void partitions(int n, std::vector<int>& c, int i, int used,
                const std::function<void(const std::vector<int>&)>& visit) {
  if (i == n) {
    visit(c);
    return;
  }
  for (int k = 0; k <= used; ++k) {
    c[i] = k;
    partitions(n, c, i + 1, std::max(used, k + 1), visit);
  }
}

Graph two_triangles() {
  Graph g(6);
  g.add_edge(0, 1), g.add_edge(1, 2), g.add_edge(0, 2);
  g.add_edge(3, 4), g.add_edge(4, 5), g.add_edge(3, 5);
  return g;
}

}  // namespace

TEST(Mis, EdgelessTakesEveryone) {
  const NodeSet s = maximal_independent_set(Graph(5), 1);
  EXPECT_EQ(s.members, (std::vector<NodeId>{0, 1, 2, 3, 4}));
}

TEST(Mis, CycleOfSix) {
  const Graph g = oracle::cycle(6);
  std::set<std::size_t> sizes;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const NodeSet s = maximal_independent_set(g, seed);
    EXPECT_TRUE(is_maximal_independent(g, s.members));
    sizes.insert(s.members.size());
  }
  EXPECT_EQ(sizes, (std::set<std::size_t>{2, 3}));
}

TEST(Mis, PathOutcomes) {
  // {b} exactly when the permutation starts at b: probability 1/3.
  const Graph g = oracle::path(3);
  int middle = 0;
  const int draws = 30000;
  for (int seed = 0; seed < draws; ++seed) {
    const NodeSet s = maximal_independent_set(g, static_cast<std::uint64_t>(seed));
    if (s.members == std::vector<NodeId>{1}) {
      ++middle;
    } else {
      EXPECT_EQ(s.members, (std::vector<NodeId>{0, 2}));
    }
  }
  EXPECT_NEAR(middle / static_cast<double>(draws), 1.0 / 3.0, 0.015);
}

TEST(Mis, PropertyIndependentAndMaximal) {
  Rng rng = make_rng(99);
  for (int t = 0; t < 2000; ++t) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 40));
    const Graph g = oracle::random_graph(n, uniform01(rng) * 0.5, rng);
    const NodeSet s = maximal_independent_set(g, rng());
    ASSERT_TRUE(is_independent(g, s.members));
    ASSERT_TRUE(is_maximal_independent(g, s.members));
    ASSERT_TRUE(std::is_sorted(s.members.begin(), s.members.end()));
  }
}

TEST(Mis, Deterministic) {
  const Graph g = generate_scale_free(300, 2.5, 6.0, 4);
  EXPECT_EQ(maximal_independent_set(g, 8).members, maximal_independent_set(g, 8).members);
}

TEST(Mis, CapSubsamples) {
  const Graph g = generate_scale_free(300, 2.5, 6.0, 4);
  const NodeSet s = maximal_independent_set(g, 8, 20);
  EXPECT_EQ(s.members.size(), 20u);
  EXPECT_TRUE(s.has_flag("subsampled"));
  EXPECT_TRUE(is_independent(g, s.members));
}

TEST(Bounds, KnownGraphs) {
  const IndependenceBounds c6 = independence_bounds(oracle::cycle(6));
  EXPECT_EQ(c6.upper, 3);
  EXPECT_DOUBLE_EQ(c6.upper_raw, 3.0);
  EXPECT_DOUBLE_EQ(c6.lower, 2.0);
  const IndependenceBounds k4 = independence_bounds(oracle::complete(4));
  EXPECT_DOUBLE_EQ(k4.upper_raw, 2.0);
  EXPECT_DOUBLE_EQ(k4.lower, 1.0);
  const IndependenceBounds s5 = independence_bounds(oracle::star(5));
  EXPECT_DOUBLE_EQ(s5.upper_raw, 5.0);
  EXPECT_NEAR(s5.lower, 1.0 / 6.0 + 2.5, 1e-12);
  EXPECT_EQ(oracle::alpha(oracle::star(5)), 5);
  EXPECT_EQ(independence_bounds(Graph(4)).upper, 4);
}

TEST(Bounds, SandwichBruteForce) {
  Rng rng = make_rng(7);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 10));
    const Graph g = oracle::random_graph(n, uniform01(rng), rng);
    const IndependenceBounds b = independence_bounds(g);
    const int a = oracle::alpha(g);
    EXPECT_LE(b.lower, a + 1e-12);
    EXPECT_LE(a, b.upper_raw + 1e-12);
    EXPECT_LE(maximal_independent_set(g, rng()).members.size(), static_cast<std::size_t>(a));
  }
}

TEST(RandomSample, Sizes) {
  const Graph g(10);
  EXPECT_TRUE(random_sample(g, 0, 1).members.empty());
  EXPECT_EQ(random_sample(g, 10, 1).members.size(), 10u);
  const NodeSet s = random_sample(g, 4, 2);
  EXPECT_EQ(s.members.size(), 4u);
  EXPECT_TRUE(std::adjacent_find(s.members.begin(), s.members.end()) == s.members.end());
  EXPECT_THROW(random_sample(g, 11, 1), InvalidInput);
}

TEST(RandomSample, Uniform) {
  const Graph g(5);
  std::vector<int> hits(5, 0);
  for (int seed = 0; seed < 20000; ++seed)
    for (NodeId v : random_sample(g, 2, static_cast<std::uint64_t>(seed)).members) ++hits[v];
  for (int h : hits) EXPECT_NEAR(h / 20000.0, 0.4, 0.02);
}

TEST(Louvain, TwoTrianglesIsOptimal) {
  const Graph g = two_triangles();
  double best = -1.0;
  std::vector<int> c(6, 0);
  int count = 0;
  partitions(6, c, 0, 0, [&](const std::vector<int>& p) {
    ++count;
    best = std::max(best, modularity_reference(g, p));
  });
  EXPECT_EQ(count, 203);
  const std::vector<int> found = louvain_communities(g, 1);
  EXPECT_NEAR(modularity(g, found), best, 1e-12);
  EXPECT_NEAR(modularity(g, found), modularity_reference(g, found), 1e-12);
  EXPECT_EQ(found[0], found[1]);
  EXPECT_EQ(found[0], found[2]);
  EXPECT_NE(found[0], found[3]);
}

TEST(Louvain, ModularityMatchesReference) {
  Rng rng = make_rng(5);
  for (int t = 0; t < 50; ++t) {
    const Graph g = oracle::random_graph(15, 0.25, rng);
    if (g.num_edges() == 0) continue;
    const std::vector<int> c = louvain_communities(g, rng());
    EXPECT_NEAR(modularity(g, c), modularity_reference(g, c), 1e-12);
    EXPECT_GE(modularity(g, c), -1e-12);
  }
}

TEST(ClusterSample, OneTriangle) {
  const NodeSet s = cluster_sample(two_triangles(), 3, 1);
  EXPECT_EQ(s.members.size(), 3u);
  const bool first = s.members == std::vector<NodeId>{0, 1, 2};
  const bool second = s.members == std::vector<NodeId>{3, 4, 5};
  EXPECT_TRUE(first || second);
  EXPECT_FALSE(s.has_flag("size_deviation"));
}

TEST(ClusterSample, Everyone) {
  const Graph g = generate_scale_free(100, 2.5, 4.0, 1);
  EXPECT_EQ(cluster_sample(g, 100, 1).members.size(), 100u);
}

TEST(ClusterSample, ReferenceSize) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = generate_scale_free(300, 2.5, 6.0, seed);
    const std::size_t target = maximal_independent_set(g, seed).members.size();
    const NodeSet s = cluster_sample(g, target, seed);
    EXPECT_NEAR(static_cast<double>(s.members.size()), static_cast<double>(target),
                0.1 * static_cast<double>(target));
  }
}

TEST(ClusterSample, GiantClusterIsFlagged) {
  const NodeSet s = cluster_sample(oracle::complete(10), 3, 1);
  EXPECT_TRUE(s.has_flag("size_deviation"));
}

TEST(Budgeted, PathExamples) {
  BudgetSpec spec;
  spec.max_size = 2;
  spec.budget = 2;
  const BudgetedResult r = budgeted_independent_set(oracle::path(3), spec);
  EXPECT_EQ(r.set.members, (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(r.degree_sum, 2);
  spec.max_size = 1;
  spec.budget = 1;
  const BudgetedResult one = budgeted_independent_set(oracle::path(3), spec);
  EXPECT_EQ(one.set.members, (std::vector<NodeId>{1}));
  EXPECT_EQ(one.degree_sum, 2);
  spec.max_size = 0;
  const BudgetedResult none = budgeted_independent_set(oracle::path(3), spec);
  EXPECT_TRUE(none.set.members.empty());
  EXPECT_EQ(none.degree_sum, 0);
}

TEST(Budgeted, MatchesSubsetSearch) {
  Rng rng = make_rng(21);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 10));
    const Graph g = oracle::random_graph(n, uniform01(rng), rng);
    BudgetSpec spec;
    spec.max_size = uniform_index(rng, static_cast<std::size_t>(n) + 1);
    for (int v = 0; v < n; ++v) spec.costs.push_back(0.5 + 2.0 * uniform01(rng));
    spec.budget = 4.0 * uniform01(rng) * n / 2.0;
    spec.edge_tolerance = uniform_index(rng, 3);
    const BudgetedResult r = budgeted_independent_set(g, spec);
    const long long best = oracle::best_budgeted(g, spec.max_size, spec.budget, spec.costs,
                                                 static_cast<int>(spec.edge_tolerance));
    ASSERT_EQ(r.degree_sum, best);
    EXPECT_TRUE(r.optimal);
    EXPECT_LE(r.set.members.size(), spec.max_size);
    EXPECT_LE(r.cost, spec.budget + 1e-9);
  }
}

TEST(Budgeted, LargeGraphUsesHeuristic) {
  const Graph g = generate_scale_free(200, 2.5, 4.0, 1);
  BudgetSpec spec;
  spec.max_size = 30;
  spec.budget = 30;
  const BudgetedResult r = budgeted_independent_set(g, spec);
  EXPECT_FALSE(r.optimal);
  EXPECT_TRUE(r.set.has_flag("heuristic"));
  EXPECT_TRUE(is_independent(g, r.set.members));
  EXPECT_LE(r.set.members.size(), 30u);
}

TEST(NodeSetJson, RoundTrip) {
  NodeSet s;
  s.strategy = Strategy::Cluster;
  s.members = {1, 4, 9};
  s.flags = {"size_deviation"};
  const NodeSet back = node_set_from_json(to_json(s));
  EXPECT_EQ(back.members, s.members);
  EXPECT_EQ(back.flags, s.flags);
  EXPECT_EQ(back.strategy, Strategy::Cluster);
  EXPECT_THROW(node_set_from_json(nlohmann::json::parse(R"({"members": "x"})")), ParseError);
}

TEST(Strategy, Names) {
  for (Strategy s : {Strategy::Independent, Strategy::Random, Strategy::Cluster,
                     Strategy::BudgetedIndependent})
    EXPECT_EQ(strategy_from_string(to_string(s)), s);
  EXPECT_THROW(strategy_from_string("snowball"), InvalidInput);
}

TEST(Costs, ReadCsv) {
  const auto path = std::filesystem::temp_directory_path() / "np_costs.csv";
  {
    std::ofstream out(path);
    out << "actor_id,cost\n1,2.5\n0,1\n";
  }
  EXPECT_EQ(read_costs_csv(path, 2), (std::vector<double>{1.0, 2.5}));
  EXPECT_ANY_THROW(read_costs_csv(path, 3));
}
