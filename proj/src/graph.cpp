#include "netpolicy/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "netpolicy/errors.hpp"

namespace netpolicy {

Graph::Graph(int n) {
  if (n < 0) throw InvalidInput("graph size must be non-negative");
  adj_.resize(static_cast<std::size_t>(n));
}

void Graph::check_pair(NodeId u, NodeId v) const {
  const int n = num_nodes();
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw InvalidInput("actor id out of range: " + std::to_string(u) + " " +
                       std::to_string(v));
  if (u == v) throw InvalidInput("self-loop on actor " + std::to_string(u));
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u == v) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const NodeId other = &a == &adj_[u] ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

bool Graph::add_edge(NodeId u, NodeId v) {
  check_pair(u, v);
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return false;
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edges_;
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  check_pair(u, v);
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it == au.end() || *it != v) return false;
  au.erase(it);
  auto& av = adj_[v];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  --edges_;
  return true;
}

bool Graph::toggle_edge(NodeId u, NodeId v) {
  if (remove_edge(u, v)) return false;
  add_edge(u, v);
  return true;
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(adj_.size());
  for (std::size_t v = 0; v < adj_.size(); ++v) d[v] = static_cast<int>(adj_[v].size());
  return d;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edge_list() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edges_);
  for (NodeId u = 0; u < num_nodes(); ++u)
    for (NodeId v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int Graph::common_neighbors(NodeId u, NodeId v) const {
  const auto& a = adj_[u];
  const auto& b = adj_[v];
  int count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

TieChangeTable tie_change_table(const Graph& before, const Graph& after) {
  if (before.num_nodes() != after.num_nodes())
    throw InvalidInput("tie change table needs graphs on the same actor set");
  const std::uint64_t n = static_cast<std::uint64_t>(before.num_nodes());
  TieChangeTable t;
  for (NodeId u = 0; u < before.num_nodes(); ++u) {
    for (NodeId v : before.neighbors(u)) {
      if (u >= v) continue;
      if (after.has_edge(u, v))
        ++t.n11;
      else
        ++t.n10;
    }
  }
  t.n01 = after.num_edges() - t.n11;
  t.n00 = n * (n - 1) / 2 - t.n01 - t.n10 - t.n11;
  return t;
}

JaccardIndex jaccard(const TieChangeTable& t) {
  const std::uint64_t denom = t.n01 + t.n10 + t.n11;
  if (denom == 0) return {1.0, true};
  return {static_cast<double>(t.n11) / static_cast<double>(denom), false};
}

DegreeDistribution DegreeDistribution::from_degrees(std::span<const int> degrees) {
  DegreeDistribution d;
  if (degrees.empty()) return d;
  std::map<int, std::size_t> counts;
  for (int k : degrees) ++counts[k];
  const double total = static_cast<double>(degrees.size());
  for (auto [k, c] : counts) d.mass_[k] = static_cast<double>(c) / total;
  return d;
}

DegreeDistribution::DegreeDistribution(std::map<int, double> mass) : mass_(std::move(mass)) {
  double total = 0.0;
  for (auto [k, p] : mass_) {
    if (!(p >= 0.0)) throw InvalidInput("degree mass must be non-negative");
    total += p;
  }
  if (!mass_.empty() && std::abs(total - 1.0) > 1e-12)
    throw InvalidInput("degree distribution must sum to 1");
}

double DegreeDistribution::at(int degree) const {
  auto it = mass_.find(degree);
  return it == mass_.end() ? 0.0 : it->second;
}

std::size_t triangle_count(const Graph& g) {
  std::size_t t = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (v <= u) continue;
      for (NodeId w : g.neighbors(v)) {
        if (w <= v) continue;
        if (g.has_edge(u, w)) ++t;
      }
    }
  }
  return t;
}

double global_transitivity(const Graph& g) {
  double triples = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const double d = g.degree(v);
    triples += d * (d - 1) / 2.0;
  }
  if (triples == 0.0) return 0.0;
  return 3.0 * static_cast<double>(triangle_count(g)) / triples;
}

double local_clustering(const Graph& g, NodeId v) {
  const auto nb = g.neighbors(v);
  const double d = static_cast<double>(nb.size());
  if (nb.size() < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t a = 0; a < nb.size(); ++a)
    for (std::size_t b = a + 1; b < nb.size(); ++b)
      if (g.has_edge(nb[a], nb[b])) ++links;
  return static_cast<double>(links) / (d * (d - 1) / 2.0);
}

std::vector<int> distances_from(const Graph& g, std::span<const NodeId> sources) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_nodes()), -1);
  std::deque<NodeId> queue;
  for (NodeId s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

int connected_components(const Graph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.num_nodes()), 0);
  int comps = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (seen[s]) continue;
    ++comps;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  return comps;
}

GraphMetrics graph_metrics(const Graph& g) {
  GraphMetrics m;
  m.n = g.num_nodes();
  m.edges = g.num_edges();
  const double n = m.n;
  const double e = static_cast<double>(m.edges);
  m.density = m.n < 2 ? 0.0 : e / (n * (n - 1) / 2.0);
  m.mean_degree = m.n == 0 ? 0.0 : 2.0 * e / n;
  m.transitivity = global_transitivity(g);
  m.max_degree = g.max_degree();
  m.components = connected_components(g);
  const auto deg = g.degrees();
  m.degree_distribution = DegreeDistribution::from_degrees(deg);
  return m;
}

namespace {

double kl_term(double p, double m) { return p > 0.0 ? p * std::log(p / m) : 0.0; }

}  // namespace

Divergence jensen_shannon_divergence(const DegreeDistribution& p,
                                     const DegreeDistribution& q) {
  std::map<int, std::pair<double, double>> joint;
  for (auto [k, v] : p.mass()) joint[k].first = v;
  for (auto [k, v] : q.mass()) joint[k].second = v;
  double js = 0.0;
  for (const auto& [k, pq] : joint) {
    const double m = 0.5 * (pq.first + pq.second);
    js += 0.5 * kl_term(pq.first, m) + 0.5 * kl_term(pq.second, m);
  }
  // Rounding can leave tiny negatives or overshoot ln 2.
  js = std::clamp(js, 0.0, std::log(2.0));
  return {js, "e"};
}

}  // namespace netpolicy
