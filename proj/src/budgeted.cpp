#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "netpolicy/errors.hpp"
#include "netpolicy/sampling.hpp"

namespace netpolicy {
namespace {

struct Problem {
  int n = 0;
  std::vector<NodeId> order;        // actors by degree, descending
  std::vector<long long> deg;       // indexed by position in order
  std::vector<double> cost;         // indexed by position in order
  std::vector<std::uint64_t> adj;   // neighbor mask over positions
  std::size_t max_size = 0;
  double budget = 0.0;
  std::size_t tolerance = 0;
};

struct Search {
  const Problem& p;
  std::uint64_t best_mask = 0;
  long long best_deg = 0;
  std::size_t best_size = 0;

  // Degrees are sorted, so the next free slots give the largest reachable sum.
  std::pair<long long, std::size_t> bound(int i, long long deg, std::size_t size) const {
    std::size_t room = std::min<std::size_t>(p.max_size - size, static_cast<std::size_t>(p.n - i));
    long long extra = 0;
    for (std::size_t k = 0; k < room; ++k) extra += p.deg[i + k];
    return {deg + extra, size + room};
  }

  bool better(long long deg, std::size_t size) const {
    return deg > best_deg || (deg == best_deg && size > best_size);
  }

  void run(int i, std::uint64_t mask, long long deg, std::size_t size, double cost,
           std::size_t edges) {
    if (better(deg, size)) {
      best_mask = mask;
      best_deg = deg;
      best_size = size;
    }
    if (i == p.n || size == p.max_size) return;
    auto [bd, bs] = bound(i, deg, size);
    if (!better(bd, bs)) return;

    const std::size_t added = static_cast<std::size_t>(std::popcount(p.adj[i] & mask));
    if (cost + p.cost[i] <= p.budget && edges + added <= p.tolerance)
      run(i + 1, mask | (std::uint64_t{1} << i), deg + p.deg[i], size + 1,
          cost + p.cost[i], edges + added);
    run(i + 1, mask, deg, size, cost, edges);
  }
};

std::vector<double> checked_costs(const Graph& g, const BudgetSpec& spec) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (spec.costs.empty()) return std::vector<double>(n, 1.0);
  if (spec.costs.size() != n)
    throw InvalidInput("cost vector has " + std::to_string(spec.costs.size()) +
                       " entries for " + std::to_string(n) + " actors");
  for (double c : spec.costs)
    if (!std::isfinite(c) || c < 0.0) throw InvalidInput("costs must be finite and non-negative");
  return spec.costs;
}

BudgetedResult finish(const Graph& g, std::vector<NodeId> members,
                      const std::vector<double>& costs, bool optimal) {
  BudgetedResult r;
  std::sort(members.begin(), members.end());
  for (std::size_t a = 0; a < members.size(); ++a) {
    r.degree_sum += g.degree(members[a]);
    r.cost += costs[members[a]];
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (g.has_edge(members[a], members[b])) ++r.internal_edges;
  }
  r.set.strategy = Strategy::BudgetedIndependent;
  r.set.members = std::move(members);
  r.optimal = optimal;
  if (!optimal) r.set.flags.push_back("heuristic");
  return r;
}

}  // namespace

BudgetedResult budgeted_independent_set(const Graph& g, const BudgetSpec& spec) {
  const std::vector<double> costs = checked_costs(g, spec);
  const int n = g.num_nodes();
  if (spec.max_size == 0 || spec.budget < 0.0 || !std::isfinite(spec.budget) || n == 0)
    return finish(g, {}, costs, true);

  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });

  if (n <= kExactBudgetedLimit) {
    Problem p;
    p.n = n;
    p.order = order;
    p.max_size = spec.max_size;
    p.budget = spec.budget;
    p.tolerance = spec.edge_tolerance;
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) pos[order[k]] = k;
    p.deg.resize(n);
    p.cost.resize(n);
    p.adj.assign(n, 0);
    for (int k = 0; k < n; ++k) {
      p.deg[k] = g.degree(order[k]);
      p.cost[k] = costs[order[k]];
      for (NodeId u : g.neighbors(order[k])) p.adj[k] |= std::uint64_t{1} << pos[u];
    }
    Search s{p};
    s.run(0, 0, 0, 0, 0.0, 0);
    std::vector<NodeId> members;
    for (int k = 0; k < n; ++k)
      if (s.best_mask >> k & 1) members.push_back(order[k]);
    return finish(g, std::move(members), costs, true);
  }

  // Greedy by degree per unit cost; free actors come first.
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const double ra = costs[a] > 0.0 ? g.degree(a) / costs[a] : HUGE_VAL;
    const double rb = costs[b] > 0.0 ? g.degree(b) / costs[b] : HUGE_VAL;
    return ra > rb;
  });
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> members;
  double cost = 0.0;
  std::size_t edges = 0;
  for (NodeId v : order) {
    if (members.size() == spec.max_size) break;
    if (cost + costs[v] > spec.budget) continue;
    std::size_t added = 0;
    for (NodeId u : g.neighbors(v)) added += in[u];
    if (edges + added > spec.edge_tolerance) continue;
    in[v] = 1;
    members.push_back(v);
    cost += costs[v];
    edges += added;
  }
  return finish(g, std::move(members), costs, false);
}

}  // namespace netpolicy
