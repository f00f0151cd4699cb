#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netpolicy {

using NodeId = int;

/// Undirected simple graph over actors 0..n-1. Neighbor lists are kept
/// sorted, so membership tests are logarithmic in the degree.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const { return edges_; }

  bool has_edge(NodeId u, NodeId v) const;
  /// Returns false if the edge already existed. Self-loops are rejected.
  bool add_edge(NodeId u, NodeId v);
  /// Returns false if the edge was absent.
  bool remove_edge(NodeId u, NodeId v);
  /// Adds the edge if absent, removes it otherwise; returns the new tie value.
  bool toggle_edge(NodeId u, NodeId v);

  int degree(NodeId v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
  std::vector<int> degrees() const;

  /// Edges as (u, v) pairs with u < v, in lexicographic order.
  std::vector<std::pair<NodeId, NodeId>> edge_list() const;

  /// |N(u) ∩ N(v)|.
  int common_neighbors(NodeId u, NodeId v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(NodeId u, NodeId v) const;

  std::vector<std::vector<NodeId>> adj_;
  std::size_t edges_ = 0;
};

/// Dyad counts by (old, new) tie value between two observations.
struct TieChangeTable {
  std::uint64_t n00 = 0;
  std::uint64_t n01 = 0;
  std::uint64_t n10 = 0;
  std::uint64_t n11 = 0;

  std::uint64_t total() const { return n00 + n01 + n10 + n11; }
};

struct JaccardIndex {
  double value = 1.0;
  /// Set when n01 + n10 + n11 == 0 and the index is reported as 1 by convention.
  bool undefined = false;
};

TieChangeTable tie_change_table(const Graph& before, const Graph& after);
JaccardIndex jaccard(const TieChangeTable& t);

/// Probability mass over degree values.
class DegreeDistribution {
 public:
  DegreeDistribution() = default;
  /// Builds the empirical distribution of the given degrees.
  static DegreeDistribution from_degrees(std::span<const int> degrees);
  /// Takes an explicit mass function; masses must be non-negative and sum to 1.
  explicit DegreeDistribution(std::map<int, double> mass);

  const std::map<int, double>& mass() const { return mass_; }
  double at(int degree) const;

 private:
  std::map<int, double> mass_;
};

struct GraphMetrics {
  int n = 0;
  std::size_t edges = 0;
  double density = 0.0;
  double mean_degree = 0.0;
  double transitivity = 0.0;
  int max_degree = 0;
  int components = 0;
  DegreeDistribution degree_distribution;
};

GraphMetrics graph_metrics(const Graph& g);

/// 3 × triangles / connected triples; 0 when the graph has no triple.
double global_transitivity(const Graph& g);
std::size_t triangle_count(const Graph& g);
/// Local clustering of v; 0 when degree < 2.
double local_clustering(const Graph& g, NodeId v);
int connected_components(const Graph& g);
/// Breadth-first distances from a source set; -1 marks unreachable actors.
std::vector<int> distances_from(const Graph& g, std::span<const NodeId> sources);

struct Divergence {
  double value = 0.0;
  const char* log_base = "e";
};

/// Jensen-Shannon divergence with natural logarithm, in [0, ln 2].
Divergence jensen_shannon_divergence(const DegreeDistribution& p,
                                     const DegreeDistribution& q);

/// Configuration-model scale-free graph: power-law degree sequence, stub
/// matching, double-edge swaps to repair loops and multi-edges, then random
/// trimming or filling to exactly round(n * target_mean_degree / 2) edges.
Graph generate_scale_free(int n, double exponent, double target_mean_degree,
                          std::uint64_t seed);

}  // namespace netpolicy
