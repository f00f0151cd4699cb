#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "netpolicy/errors.hpp"
#include "netpolicy/rng.hpp"
#include "netpolicy/sampling.hpp"

namespace netpolicy {

NodeSet random_sample(const Graph& g, std::size_t k, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (k > n)
    throw InvalidInput("random sample of " + std::to_string(k) + " from " +
                       std::to_string(n) + " actors");
  Rng rng = make_rng(seed);
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + uniform_index(rng, n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return {Strategy::Random, std::move(pool), {}};
}

NodeSet cluster_sample(const Graph& g, std::size_t target_size, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (target_size > n)
    throw InvalidInput("cluster sample target exceeds the actor count");

  const std::vector<int> labels = louvain_communities(g, seed);
  const int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<NodeId>> groups(count);
  for (NodeId v = 0; v < g.num_nodes(); ++v) groups[labels[v]].push_back(v);
  std::stable_sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  const double target = static_cast<double>(target_size);
  const double ceiling = target * 1.1;
  NodeSet out;
  out.strategy = Strategy::Cluster;
  std::vector<char> used(groups.size(), 0);
  for (std::size_t c = 0; c < groups.size() && out.members.size() < target_size; ++c) {
    if (static_cast<double>(out.members.size() + groups[c].size()) > ceiling) continue;
    out.members.insert(out.members.end(), groups[c].begin(), groups[c].end());
    used[c] = 1;
  }
  // Still short: take the smallest unused community if it lands closer.
  if (static_cast<double>(out.members.size()) < 0.9 * target) {
    for (std::size_t c = groups.size(); c-- > 0;) {
      if (used[c]) continue;
      const double with = static_cast<double>(out.members.size() + groups[c].size());
      if (std::abs(with - target) < std::abs(static_cast<double>(out.members.size()) - target)) {
        out.members.insert(out.members.end(), groups[c].begin(), groups[c].end());
        used[c] = 1;
      }
      break;
    }
  }
  std::sort(out.members.begin(), out.members.end());
  const double achieved = static_cast<double>(out.members.size());
  if (achieved < 0.9 * target || achieved > ceiling) out.flags.push_back("size_deviation");
  return out;
}

nlohmann::json to_json(const NodeSet& s) {
  return nlohmann::ordered_json{{"strategy", to_string(s.strategy)},
                                {"members", s.members},
                                {"achieved_size", s.members.size()},
                                {"flags", s.flags}};
}

NodeSet node_set_from_json(const nlohmann::json& j) {
  NodeSet s;
  try {
    s.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    s.members = j.at("members").get<std::vector<NodeId>>();
    if (j.contains("flags")) s.flags = j.at("flags").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("node set: ") + e.what());
  }
  std::sort(s.members.begin(), s.members.end());
  if (std::adjacent_find(s.members.begin(), s.members.end()) != s.members.end())
    throw ParseError("node set: duplicate member");
  return s;
}

std::vector<double> read_costs_csv(const std::filesystem::path& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<double> costs(static_cast<std::size_t>(n), -1.0);
  std::string line;
  std::getline(in, line);  // header
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream cells(line);
    long long id = -1;
    double cost = -1.0;
    char comma = 0;
    if (!(cells >> id >> comma >> cost) || comma != ',')
      throw ParseError(path.string() + ": row " + std::to_string(row) + ": expected actor_id,cost");
    if (id < 0 || id >= n || costs[id] >= 0.0)
      throw ParseError(path.string() + ": row " + std::to_string(row) + ", column actor_id: invalid or repeated id");
    if (!std::isfinite(cost) || cost < 0.0)
      throw ParseError(path.string() + ": row " + std::to_string(row) + ", column cost: must be non-negative");
    costs[id] = cost;
  }
  for (int i = 0; i < n; ++i)
    if (costs[i] < 0.0) throw ParseError(path.string() + ": no cost for actor " + std::to_string(i));
  return costs;
}

}  // namespace netpolicy
