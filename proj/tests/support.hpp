#pragma once

// Generators and slow reference computations shared by the unit tests and the
// acceptance binary. Nothing here calls into the code under test except for
// the Graph container.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "netpolicy/graph.hpp"
#include "netpolicy/rng.hpp"

namespace oracle {

using netpolicy::Graph;
using netpolicy::Rng;

inline Graph random_graph(int n, double p, Rng& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (netpolicy::uniform01(rng) < p) g.add_edge(u, v);
  return g;
}

inline Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.num_nodes(), 0);
  for (auto [u, v] : g.edge_list()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

inline int internal_edges(const std::vector<std::uint32_t>& adj, std::uint32_t mask) {
  int e = 0;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (mask >> v & 1u) e += std::popcount(adj[v] & mask);
  return e / 2;
}

// Independence number by trying every subset.
inline int alpha(const Graph& g) {
  const int n = g.num_nodes();
  const auto adj = adjacency_masks(g);
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (internal_edges(adj, mask) == 0) best = std::max(best, std::popcount(mask));
  return best;
}

// Highest degree sum over subsets within size, cost and edge limits.
inline long long best_budgeted(const Graph& g, std::size_t max_size, double budget,
                               const std::vector<double>& costs, int tolerance) {
  const int n = g.num_nodes();
  const auto adj = adjacency_masks(g);
  long long best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_size) continue;
    double cost = 0.0;
    long long deg = 0;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) {
        cost += costs.empty() ? 1.0 : costs[v];
        deg += g.degree(v);
      }
    if (cost > budget + 1e-9) continue;
    if (internal_edges(adj, mask) > tolerance) continue;
    best = std::max(best, deg);
  }
  return best;
}

// 3 * triangles / connected triples, counted over ordered vertex triples.
inline double transitivity(const Graph& g) {
  const int n = g.num_nodes();
  long long closed = 0, triples = 0;
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b || a == c || b == c) continue;
        if (!g.has_edge(a, c) || !g.has_edge(b, c)) continue;
        ++triples;
        if (g.has_edge(a, b)) ++closed;
      }
  return triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
}

inline double jsd(const std::map<int, double>& p, const std::map<int, double>& q) {
  std::map<int, std::pair<double, double>> both;
  for (auto [k, v] : p) both[k].first = v;
  for (auto [k, v] : q) both[k].second = v;
  double out = 0.0;
  for (auto [k, pq] : both) {
    const double m = 0.5 * (pq.first + pq.second);
    if (pq.first > 0) out += 0.5 * pq.first * std::log(pq.first / m);
    if (pq.second > 0) out += 0.5 * pq.second * std::log(pq.second / m);
  }
  return out;
}

// Two-sided permutation p of U, counting pairwise wins instead of rank sums.
inline double mann_whitney_p(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  const int n = static_cast<int>(pooled.size());
  const int nx = static_cast<int>(x.size());
  auto u_of = [&](std::uint32_t mask) {
    double u = 0.0;
    for (int a = 0; a < n; ++a) {
      if (!(mask >> a & 1u)) continue;
      for (int b = 0; b < n; ++b) {
        if (mask >> b & 1u) continue;
        if (pooled[a] > pooled[b]) u += 1.0;
        else if (pooled[a] == pooled[b]) u += 0.5;
      }
    }
    return u;
  };
  const double center = 0.5 * nx * (n - nx);
  const double observed = std::abs(u_of((1u << nx) - 1u) - center);
  long long hit = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != nx) continue;
    ++total;
    if (std::abs(u_of(mask) - center) >= observed - 1e-9) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

// Discrete power-law exponent by maximum likelihood above xmin, using the
// continuous approximation with the half-integer shift.
inline double power_law_exponent(const std::vector<int>& degrees, int xmin) {
  double sum = 0.0;
  long long count = 0;
  for (int d : degrees)
    if (d >= xmin) {
      sum += std::log(d / (xmin - 0.5));
      ++count;
    }
  return 1.0 + static_cast<double>(count) / sum;
}

}  // namespace oracle
