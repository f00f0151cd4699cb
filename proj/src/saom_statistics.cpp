#include <cmath>

#include "netpolicy/saom.hpp"
#include "saom_detail.hpp"

namespace netpolicy {
namespace {

double behavior_eval_value(BehEffect e, const SaomModel& m, const NetworkState& s, NodeId i,
                           int b) {
  const int deg = s.graph.degree(i);
  switch (e) {
    case BehEffect::LinearShape: return b;
    case BehEffect::OutdegreeEffect: return static_cast<double>(b) * deg;
    case BehEffect::AvgPeerInfluence: {
      if (deg == 0) return 0.0;
      double sum = 0.0;
      for (NodeId j : s.graph.neighbors(i)) sum += m.scales.behavior.centred(b, s.behavior[j]);
      return sum / deg;
    }
  }
  return 0.0;
}

}  // namespace

std::vector<double> network_eval_statistics(const SaomModel& m, const NetworkState& s, NodeId i) {
  std::vector<double> out;
  out.reserve(m.spec.network_eval.size());
  for (NetEffect e : m.spec.network_eval) {
    double v = 0.0;
    switch (e) {
      case NetEffect::Outdegree: v = s.graph.degree(i); break;
      case NetEffect::Transitivity:
        // Ordered pairs (j, k) of linked neighbors: twice the triangles at i.
        for (NodeId j : s.graph.neighbors(i)) v += s.graph.common_neighbors(i, j);
        break;
      case NetEffect::BehaviorHomophily:
        for (NodeId j : s.graph.neighbors(i))
          v += m.scales.behavior.centred(s.behavior[i], s.behavior[j]);
        break;
      case NetEffect::PriceHomophily:
        for (NodeId j : s.graph.neighbors(i)) v += m.scales.price.centred(s.price[i], s.price[j]);
        break;
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> behavior_eval_statistics(const SaomModel& m, const NetworkState& s, NodeId i) {
  std::vector<double> out;
  out.reserve(m.spec.behavior_eval.size());
  for (BehEffect e : m.spec.behavior_eval) out.push_back(behavior_eval_value(e, m, s, i, s.behavior[i]));
  return out;
}

std::vector<double> network_rate_statistics(const SaomModel& m, const NetworkState& s, NodeId i) {
  std::vector<double> out;
  for (NetRateEffect e : m.spec.network_rate) {
    switch (e) {
      case NetRateEffect::LogOutdegree: out.push_back(std::log(s.graph.degree(i) + 1.0)); break;
      case NetRateEffect::BehaviorOnNetRate:
        out.push_back(s.behavior[i] - m.scales.behavior_center);
        break;
      case NetRateEffect::PriceOnNetRate: out.push_back(s.price[i] - m.scales.price_center); break;
    }
  }
  return out;
}

std::vector<double> behavior_rate_statistics(const SaomModel& m, const NetworkState& s, NodeId i) {
  std::vector<double> out;
  for (BehRateEffect e : m.spec.behavior_rate) {
    switch (e) {
      case BehRateEffect::PriceOnBehRate: out.push_back(s.price[i] - m.scales.price_center); break;
    }
  }
  return out;
}

namespace detail {

void network_change_utilities(const SaomModel& m, const std::vector<double>& beta,
                              const NetworkState& s, NodeId i, std::vector<double>& out) {
  const int n = s.num_actors();
  out.assign(static_cast<std::size_t>(n), 0.0);
  double w_out = 0.0;
  double w_trans = 0.0;
  double w_beh = 0.0;
  double w_price = 0.0;
  for (std::size_t k = 0; k < m.spec.network_eval.size(); ++k) {
    switch (m.spec.network_eval[k]) {
      case NetEffect::Outdegree: w_out = beta[k]; break;
      case NetEffect::Transitivity: w_trans = beta[k]; break;
      case NetEffect::BehaviorHomophily: w_beh = beta[k]; break;
      case NetEffect::PriceHomophily: w_price = beta[k]; break;
    }
  }

  // Common-neighbor counts with every j via the neighbors of i's neighbors.
  thread_local std::vector<int> common;
  thread_local std::vector<char> linked;
  common.assign(static_cast<std::size_t>(n), 0);
  linked.assign(static_cast<std::size_t>(n), 0);
  for (NodeId k : s.graph.neighbors(i)) {
    linked[k] = 1;
    if (w_trans != 0.0)
      for (NodeId j : s.graph.neighbors(k)) ++common[j];
  }

  for (NodeId j = 0; j < n; ++j) {
    if (j == i) continue;
    double u = w_out + 2.0 * w_trans * common[j];
    if (w_beh != 0.0) u += w_beh * m.scales.behavior.centred(s.behavior[i], s.behavior[j]);
    if (w_price != 0.0) u += w_price * m.scales.price.centred(s.price[i], s.price[j]);
    out[j] = linked[j] ? -u : u;
  }
}

double behavior_utility(const SaomModel& m, const std::vector<double>& beta, const NetworkState& s,
                        NodeId i, int value) {
  double f = 0.0;
  for (std::size_t k = 0; k < m.spec.behavior_eval.size(); ++k)
    if (beta[k] != 0.0) f += beta[k] * behavior_eval_value(m.spec.behavior_eval[k], m, s, i, value);
  return f;
}

std::vector<double> total_network_statistics(const SaomModel& m, const Graph& g,
                                             const std::vector<int>& behavior,
                                             const std::vector<double>& price) {
  const int n = g.num_nodes();
  std::vector<double> total;
  total.reserve(m.spec.network_eval.size());
  for (NetEffect e : m.spec.network_eval) {
    double v = 0.0;
    switch (e) {
      case NetEffect::Outdegree: v = 2.0 * static_cast<double>(g.num_edges()); break;
      case NetEffect::Transitivity: {
        thread_local std::vector<char> mark;
        mark.assign(static_cast<std::size_t>(n), 0);
        for (NodeId i = 0; i < n; ++i) {
          for (NodeId j : g.neighbors(i)) mark[j] = 1;
          for (NodeId j : g.neighbors(i))
            for (NodeId k : g.neighbors(j)) v += mark[k];
          for (NodeId j : g.neighbors(i)) mark[j] = 0;
        }
        break;
      }
      case NetEffect::BehaviorHomophily:
        for (auto [i, j] : g.edge_list()) v += 2.0 * m.scales.behavior.centred(behavior[i], behavior[j]);
        break;
      case NetEffect::PriceHomophily:
        for (auto [i, j] : g.edge_list()) v += 2.0 * m.scales.price.centred(price[i], price[j]);
        break;
    }
    total.push_back(v);
  }
  return total;
}

std::vector<double> total_behavior_statistics(const SaomModel& m, const Graph& g,
                                              const std::vector<int>& behavior) {
  const int n = g.num_nodes();
  std::vector<double> total;
  total.reserve(m.spec.behavior_eval.size());
  for (BehEffect e : m.spec.behavior_eval) {
    double v = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      if (e == BehEffect::LinearShape) {
        v += behavior[i];
      } else if (e == BehEffect::OutdegreeEffect) {
        v += static_cast<double>(behavior[i]) * g.degree(i);
      } else if (g.degree(i) > 0) {
        double sum = 0.0;
        for (NodeId j : g.neighbors(i)) sum += m.scales.behavior.centred(behavior[i], behavior[j]);
        v += sum / g.degree(i);
      }
    }
    total.push_back(v);
  }
  return total;
}

}  // namespace detail
}  // namespace netpolicy
