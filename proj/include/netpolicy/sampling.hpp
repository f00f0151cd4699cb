#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "netpolicy/graph.hpp"

namespace netpolicy {

enum class Strategy { Independent, Random, Cluster, BudgetedIndependent };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

/// A treatment group drawn from a graph.
struct NodeSet {
  Strategy strategy = Strategy::Independent;
  std::vector<NodeId> members;  // sorted, unique
  std::vector<std::string> flags;

  std::size_t achieved_size() const { return members.size(); }
  bool contains(NodeId v) const;
  bool has_flag(const std::string& f) const;
  /// Membership indicator over n actors.
  std::vector<char> indicator(int n) const;
};

bool is_independent(const Graph& g, const std::vector<NodeId>& members);
/// Every non-member has at least one neighbor in the set.
bool is_maximal_independent(const Graph& g, const std::vector<NodeId>& members);

/// Random-permutation greedy maximal independent set. Actors that precede all
/// their neighbors in the permutation are always selected; the scan continues
/// in permutation order until the set is maximal. A cap subsamples the result
/// uniformly (flag "subsampled"), which gives up maximality.
NodeSet maximal_independent_set(const Graph& g, std::uint64_t seed,
                                 std::optional<std::size_t> cap = std::nullopt);

struct IndependenceBounds {
  int upper = 0;             // n - ceil(e / max_degree), or n when edgeless
  double upper_raw = 0.0;    // n - e / max_degree
  double lower = 0.0;        // sum over v of 1 / (1 + d_v)
};

IndependenceBounds independence_bounds(const Graph& g);

/// Uniform sample of exactly k actors without replacement.
NodeSet random_sample(const Graph& g, std::size_t k, std::uint64_t seed);

/// Community labels (0..c-1) from Louvain-style modularity optimisation.
std::vector<int> louvain_communities(const Graph& g, std::uint64_t seed);
double modularity(const Graph& g, const std::vector<int>& labels);

/// Whole communities, largest first, skipping any community that would push
/// the set past target_size * 1.1. Flag "size_deviation" marks results
/// outside target_size * [0.9, 1.1].
NodeSet cluster_sample(const Graph& g, std::size_t target_size, std::uint64_t seed);

struct BudgetSpec {
  std::size_t max_size = 0;      // m
  double budget = 0.0;           // b
  std::vector<double> costs;     // c, one per actor; empty means unit costs
  std::size_t edge_tolerance = 0;  // epsilon, counted in edges
};

struct BudgetedResult {
  NodeSet set;
  long long degree_sum = 0;
  double cost = 0.0;
  std::size_t internal_edges = 0;
  bool optimal = false;
};

/// Maximises the degree sum subject to size, budget and internal-edge limits.
/// Exact branch-and-bound up to 64 actors, degree/cost greedy beyond that.
/// Ties on degree sum prefer the larger set.
BudgetedResult budgeted_independent_set(const Graph& g, const BudgetSpec& spec);

constexpr int kExactBudgetedLimit = 64;

/// {strategy, members[], achieved_size, flags[]}.
nlohmann::json to_json(const NodeSet& s);
NodeSet node_set_from_json(const nlohmann::json& j);

/// Two-column CSV (actor_id, cost) with a header row; every actor in
/// [0, n) must appear exactly once.
std::vector<double> read_costs_csv(const std::filesystem::path& path, int n);

}  // namespace netpolicy
