#include <algorithm>
#include <numeric>

#include "netpolicy/errors.hpp"
#include "netpolicy/rng.hpp"
#include "netpolicy/sampling.hpp"

namespace netpolicy {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Independent: return "independent";
    case Strategy::Random: return "random";
    case Strategy::Cluster: return "cluster";
    case Strategy::BudgetedIndependent: return "budgeted-independent";
  }
  return "unknown";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "independent") return Strategy::Independent;
  if (name == "random") return Strategy::Random;
  if (name == "cluster") return Strategy::Cluster;
  if (name == "budgeted-independent" || name == "budgeted") return Strategy::BudgetedIndependent;
  throw InvalidInput("unknown sampling strategy \"" + name + "\"");
}

bool NodeSet::contains(NodeId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

bool NodeSet::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::vector<char> NodeSet::indicator(int n) const {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (NodeId v : members) {
    if (v < 0 || v >= n) throw InvalidInput("node set member outside the actor set");
    in[v] = 1;
  }
  return in;
}

bool is_independent(const Graph& g, const std::vector<NodeId>& members) {
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (g.has_edge(members[a], members[b])) return false;
  return true;
}

bool is_maximal_independent(const Graph& g, const std::vector<NodeId>& members) {
  if (!is_independent(g, members)) return false;
  std::vector<char> in(static_cast<std::size_t>(g.num_nodes()), 0);
  for (NodeId v : members) in[v] = 1;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (in[v]) continue;
    bool covered = false;
    for (NodeId u : g.neighbors(v)) covered = covered || in[u];
    if (!covered) return false;
  }
  return true;
}

NodeSet maximal_independent_set(const Graph& g, std::uint64_t seed,
                                std::optional<std::size_t> cap) {
  Rng rng = make_rng(seed);
  std::vector<NodeId> order(static_cast<std::size_t>(g.num_nodes()));
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  // 0 = undecided, 1 = selected, 2 = blocked by a selected neighbor.
  std::vector<char> state(order.size(), 0);
  NodeSet out;
  out.strategy = Strategy::Independent;
  for (NodeId v : order) {
    if (state[v] != 0) continue;
    state[v] = 1;
    out.members.push_back(v);
    for (NodeId u : g.neighbors(v)) state[u] = 2;
  }
  std::sort(out.members.begin(), out.members.end());

  if (cap && *cap < out.members.size()) {
    shuffle(out.members, rng);
    out.members.resize(*cap);
    std::sort(out.members.begin(), out.members.end());
    out.flags.push_back("subsampled");
  }
  return out;
}

IndependenceBounds independence_bounds(const Graph& g) {
  IndependenceBounds b;
  const int n = g.num_nodes();
  const auto e = static_cast<long long>(g.num_edges());
  const int delta = g.max_degree();
  if (delta == 0) {
    b.upper = n;
    b.upper_raw = n;
  } else {
    b.upper = n - static_cast<int>((e + delta - 1) / delta);
    b.upper_raw = n - static_cast<double>(e) / delta;
  }
  for (NodeId v = 0; v < n; ++v) b.lower += 1.0 / (1.0 + g.degree(v));
  return b;
}

}  // namespace netpolicy
