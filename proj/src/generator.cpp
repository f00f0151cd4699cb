#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "netpolicy/errors.hpp"
#include "netpolicy/graph.hpp"
#include "netpolicy/rng.hpp"

namespace netpolicy {
namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

// Degrees are floor(X) for X ~ Pareto(xmin, exponent - 1) truncated to [xmin, n).
struct DegreeLaw {
  double xmin;
  double shape;
  double upper;

  double survival(double x) const {
    if (x <= xmin) return 1.0;
    if (x >= upper) return 0.0;
    const double tail = std::pow(xmin / upper, shape);
    return (std::pow(xmin / x, shape) - tail) / (1.0 - tail);
  }

  double mean_degree() const {
    double m = 0.0;
    for (int k = 1; k < static_cast<int>(upper); ++k) m += survival(k);
    return m;
  }

  int draw(Rng& rng) const {
    const double tail = std::pow(xmin / upper, shape);
    const double u = uniform01(rng);
    const double x = xmin * std::pow(1.0 - u * (1.0 - tail), -1.0 / shape);
    return std::min(static_cast<int>(std::floor(x)), static_cast<int>(upper) - 1);
  }
};

DegreeLaw fit_degree_law(int n, double exponent, double target_mean) {
  // Structural cutoff sqrt(n * k) keeps the configuration model free of
  // hub-to-hub multi-edges.
  const double cutoff = std::min<double>(n, std::floor(std::sqrt(n * target_mean)) + 1.0);
  DegreeLaw law{1.0, exponent - 1.0, cutoff};
  if (law.mean_degree() >= target_mean) return law;
  double lo = 1.0;
  double hi = std::max(1.0, n - 1.0);
  for (int it = 0; it < 80; ++it) {
    law.xmin = 0.5 * (lo + hi);
    if (law.mean_degree() < target_mean)
      lo = law.xmin;
    else
      hi = law.xmin;
  }
  law.xmin = 0.5 * (lo + hi);
  return law;
}

}  // namespace

Graph generate_scale_free(int n, double exponent, double target_mean_degree,
                          std::uint64_t seed) {
  if (n < 1) throw InvalidInput("scale-free generator needs n >= 1");
  if (!(exponent > 1.0)) throw InvalidInput("power-law exponent must exceed 1");
  if (!(target_mean_degree >= 0.0) || target_mean_degree >= n)
    throw InvalidInput("target mean degree must lie in [0, n)");
  const std::uint64_t max_edges =
      static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
  const auto target_edges =
      static_cast<std::uint64_t>(std::llround(n * target_mean_degree / 2.0));
  if (target_edges > max_edges)
    throw InvalidInput("target mean degree is infeasible for n = " + std::to_string(n));

  Graph g(n);
  if (target_edges == 0) return g;

  Rng rng = make_rng(seed);
  const DegreeLaw law = fit_degree_law(n, exponent, target_mean_degree);

  std::vector<NodeId> stubs;
  std::vector<int> deg(static_cast<std::size_t>(n));
  long long total = 0;
  for (int v = 0; v < n; ++v) {
    deg[v] = law.draw(rng);
    total += deg[v];
  }
  if (total % 2 != 0) {
    NodeId v = static_cast<NodeId>(uniform_index(rng, static_cast<std::size_t>(n)));
    if (deg[v] < n - 1)
      ++deg[v];
    else
      --deg[v];
  }
  for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), deg[v], v);
  shuffle(stubs, rng);

  std::unordered_set<std::uint64_t> present;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::pair<NodeId, NodeId>> rejected;
  for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
    NodeId u = stubs[s];
    NodeId v = stubs[s + 1];
    if (u != v && present.insert(pair_key(u, v)).second)
      edges.emplace_back(u, v);
    else
      rejected.emplace_back(u, v);
  }

  // Repair loops and multi-edges by swapping with a random accepted edge:
  // (u, v) + (x, y) -> (u, x) + (v, y), which keeps every degree.
  for (auto [u, v] : rejected) {
    for (int attempt = 0; attempt < 100 && !edges.empty(); ++attempt) {
      std::size_t pick = uniform_index(rng, edges.size());
      auto [x, y] = edges[pick];
      if (bernoulli(rng, 0.5)) std::swap(x, y);
      if (u == x || v == y) continue;
      if (present.count(pair_key(u, x)) || present.count(pair_key(v, y))) continue;
      if (pair_key(u, x) == pair_key(v, y)) continue;
      present.erase(pair_key(x, y));
      present.insert(pair_key(u, x));
      present.insert(pair_key(v, y));
      edges[pick] = {u, x};
      edges.emplace_back(v, y);
      break;
    }
  }

  while (edges.size() > target_edges) {
    std::size_t pick = uniform_index(rng, edges.size());
    present.erase(pair_key(edges[pick].first, edges[pick].second));
    edges[pick] = edges.back();
    edges.pop_back();
  }
  while (edges.size() < target_edges) {
    NodeId u = static_cast<NodeId>(uniform_index(rng, static_cast<std::size_t>(n)));
    NodeId v = static_cast<NodeId>(uniform_index(rng, static_cast<std::size_t>(n)));
    if (u == v || !present.insert(pair_key(u, v)).second) continue;
    edges.emplace_back(u, v);
  }

  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

}  // namespace netpolicy
