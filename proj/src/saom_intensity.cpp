#include <map>

#include "netpolicy/errors.hpp"
#include "netpolicy/saom.hpp"

namespace netpolicy {
namespace {

int dyad_bits(int n) { return n * (n - 1) / 2; }

int dyad_bit(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace

std::uint32_t state_index(const NetworkState& s) {
  const int n = s.num_actors();
  const int bits = dyad_bits(n) + n;
  if (bits > 31) throw InvalidInput("state space too large to index");
  std::uint32_t x = 0;
  for (auto [i, j] : s.graph.edge_list()) x |= 1u << dyad_bit(n, i, j);
  for (int i = 0; i < n; ++i)
    if (s.behavior[i]) x |= 1u << (dyad_bits(n) + i);
  return x;
}

NetworkState state_from_index(std::uint32_t index, int n, const std::vector<double>& price) {
  NetworkState s{Graph(n), std::vector<int>(n, 0), price};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (index >> dyad_bit(n, i, j) & 1u) s.graph.add_edge(i, j);
  for (int i = 0; i < n; ++i) s.behavior[i] = static_cast<int>(index >> (dyad_bits(n) + i) & 1u);
  return s;
}

IntensityMatrix transition_intensity(const SaomModel& m, const ParameterVector& p,
                                     const NetworkState& s, int period) {
  p.validate(m.spec);
  const int n = s.num_actors();
  const int bits = dyad_bits(n) + n;
  if (n < 1 || bits > 15)
    throw InvalidInput("transition intensity is limited to " +
                       std::to_string(kMaxEnumeratedStates) + " enumerated states");
  IntensityMatrix q;
  q.num_states = 1u << bits;
  q.diagonal.assign(q.num_states, 0.0);
  for (std::uint32_t x = 0; x < q.num_states; ++x) {
    const NetworkState cur = state_from_index(x, n, s.price);
    std::map<std::uint32_t, double> row;
    for (NodeId i = 0; i < n; ++i) {
      const double ln = rate(m, p, cur, i, Variable::Network, period);
      if (ln > 0.0) {
        const std::vector<double> probs = network_choice_probabilities(m, p, cur, i);
        for (NodeId j = 0; j < n; ++j)
          if (j != i && probs[j] > 0.0) row[x ^ (1u << dyad_bit(n, i, j))] += ln * probs[j];
      }
      const double lb = rate(m, p, cur, i, Variable::Behavior, period);
      if (lb > 0.0) {
        const std::vector<double> probs = behavior_choice_probabilities(m, p, cur, i);
        const double flip = probs[1 - cur.behavior[i]];
        if (flip > 0.0) row[x ^ (1u << (dyad_bits(n) + i))] += lb * flip;
      }
    }
    double out_rate = 0.0;
    for (auto [to, r] : row) {
      q.off_diagonal.push_back({x, to, r});
      out_rate += r;
    }
    q.diagonal[x] = -out_rate;
  }
  return q;
}

}  // namespace netpolicy
