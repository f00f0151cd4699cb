#include <algorithm>
#include <numeric>

#include "netpolicy/rng.hpp"
#include "netpolicy/sampling.hpp"

namespace netpolicy {
namespace {

struct WeightedGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;  // no self entries
  std::vector<double> self;                               // 2 x internal weight
  std::vector<double> strength;

  int size() const { return static_cast<int>(adj.size()); }
};

WeightedGraph from_graph(const Graph& g) {
  WeightedGraph w;
  const int n = g.num_nodes();
  w.adj.resize(n);
  w.self.assign(n, 0.0);
  w.strength.assign(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) w.adj[u].emplace_back(v, 1.0);
    w.strength[u] = g.degree(u);
  }
  return w;
}

// One round of local moving; returns community ids per node and whether any
// node changed community.
bool local_moving(const WeightedGraph& w, double total2, Rng& rng, std::vector<int>& comm) {
  const int n = w.size();
  comm.resize(n);
  std::iota(comm.begin(), comm.end(), 0);
  std::vector<double> tot(w.strength);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  std::vector<double> link(n, 0.0);
  std::vector<int> touched;
  bool any_move = false;
  bool moved = true;
  int passes = 0;
  while (moved && passes < 100) {
    moved = false;
    ++passes;
    for (int i : order) {
      const int home = comm[i];
      const double ki = w.strength[i];
      touched.clear();
      for (auto [j, wt] : w.adj[i]) {
        const int c = comm[j];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += wt;
      }
      tot[home] -= ki;
      int best = home;
      double best_gain = link[home] - tot[home] * ki / total2;
      for (int c : touched) {
        const double gain = link[c] - tot[c] * ki / total2;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += ki;
      comm[i] = best;
      if (best != home) {
        moved = true;
        any_move = true;
      }
      for (int c : touched) link[c] = 0.0;
      link[home] = 0.0;
    }
  }
  return any_move;
}

}  // namespace

std::vector<int> louvain_communities(const Graph& g, std::uint64_t seed) {
  const int n = g.num_nodes();
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  if (g.num_edges() == 0) return labels;

  Rng rng = make_rng(seed);
  WeightedGraph level = from_graph(g);
  const double total2 = 2.0 * static_cast<double>(g.num_edges());
  std::vector<int> comm;
  for (int depth = 0; depth < 64; ++depth) {
    if (!local_moving(level, total2, rng, comm)) break;

    // Renumber communities densely in order of first appearance.
    std::vector<int> remap(level.size(), -1);
    int count = 0;
    for (int i = 0; i < level.size(); ++i)
      if (remap[comm[i]] < 0) remap[comm[i]] = count++;
    for (int& c : comm) c = remap[c];
    for (int& l : labels) l = comm[l];

    WeightedGraph next;
    next.adj.resize(count);
    next.self.assign(count, 0.0);
    next.strength.assign(count, 0.0);
    std::vector<std::vector<std::pair<int, double>>> acc(count);
    for (int i = 0; i < level.size(); ++i) {
      const int ci = comm[i];
      next.self[ci] += level.self[i];
      next.strength[ci] += level.strength[i];
      for (auto [j, wt] : level.adj[i]) {
        const int cj = comm[j];
        if (ci == cj)
          next.self[ci] += wt;
        else
          acc[ci].emplace_back(cj, wt);
      }
    }
    for (int c = 0; c < count; ++c) {
      auto& a = acc[c];
      std::sort(a.begin(), a.end());
      for (std::size_t k = 0; k < a.size();) {
        std::size_t r = k;
        double sum = 0.0;
        while (r < a.size() && a[r].first == a[k].first) sum += a[r++].second;
        next.adj[c].emplace_back(a[k].first, sum);
        k = r;
      }
    }
    level = std::move(next);
  }
  return labels;
}

double modularity(const Graph& g, const std::vector<int>& labels) {
  const double m = static_cast<double>(g.num_edges());
  if (m == 0.0) return 0.0;
  const int maxc = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  std::vector<double> internal(maxc + 1, 0.0), degsum(maxc + 1, 0.0);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    degsum[labels[u]] += g.degree(u);
    for (NodeId v : g.neighbors(u))
      if (u < v && labels[u] == labels[v]) internal[labels[u]] += 1.0;
  }
  double q = 0.0;
  for (int c = 0; c <= maxc; ++c) {
    const double share = degsum[c] / (2.0 * m);
    q += internal[c] / m - share * share;
  }
  return q;
}

}  // namespace netpolicy
