#include <cmath>

#include "netpolicy/errors.hpp"
#include "netpolicy/rng.hpp"
#include "netpolicy/saom.hpp"
#include "saom_detail.hpp"

namespace netpolicy {
namespace {

std::size_t sample_index(const std::vector<double>& probs, double u) {
  double acc = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) return k;
  }
  // Rounding left u above the final partial sum: take the last positive entry.
  for (std::size_t k = probs.size(); k-- > 0;)
    if (probs[k] > 0.0) return k;
  return probs.size() - 1;
}

}  // namespace

PeriodOutcome simulate_period(const SaomModel& m, const ParameterVector& p,
                              const NetworkState& start, int period, std::uint64_t seed) {
  p.validate(m.spec);
  PeriodOutcome out;
  out.state = start;
  NetworkState& s = out.state;
  const int n = s.num_actors();
  if (n == 0) return out;
  if (period < 0 || period >= p.periods()) throw InvalidInput("period outside the parameter vector");

  std::vector<double> lam_net(n);
  std::vector<double> lam_beh(n);
  for (NodeId i = 0; i < n; ++i) {
    lam_net[i] = rate(m, p, s, i, Variable::Network, period, &out.diagnostics);
    lam_beh[i] = rate(m, p, s, i, Variable::Behavior, period, &out.diagnostics);
  }
  const bool net_rate_moves = !m.spec.network_rate.empty();

  Rng rng = make_rng(seed);
  std::vector<double> utilities;
  double t = 0.0;
  while (true) {
    double total = 0.0;
    for (NodeId i = 0; i < n; ++i) total += lam_net[i] + lam_beh[i];
    if (!(total > 0.0)) break;
    t += exponential(rng, total);
    if (t > 1.0) break;
    ++out.opportunities;

    double pick = uniform01(rng) * total;
    NodeId actor = -1;
    bool network = true;
    for (NodeId i = 0; i < n && actor < 0; ++i) {
      if (pick < lam_net[i]) {
        actor = i;
      } else {
        pick -= lam_net[i];
      }
    }
    if (actor < 0) {
      network = false;
      for (NodeId i = 0; i < n && actor < 0; ++i) {
        if (pick < lam_beh[i]) {
          actor = i;
        } else {
          pick -= lam_beh[i];
        }
      }
      if (actor < 0) {
        // Only reachable through rounding: fall back to the last active actor.
        for (NodeId i = n; i-- > 0 && actor < 0;)
          if (lam_beh[i] > 0.0) actor = i;
      }
    }

    if (network) {
      detail::network_change_utilities(m, p.beta_net, s, actor, utilities);
      const auto j = static_cast<NodeId>(sample_index(softmax(utilities), uniform01(rng)));
      if (j != actor) {
        s.graph.toggle_edge(actor, j);
        ++out.network_steps;
        if (net_rate_moves) {
          lam_net[actor] = rate(m, p, s, actor, Variable::Network, period, &out.diagnostics);
          lam_net[j] = rate(m, p, s, j, Variable::Network, period, &out.diagnostics);
        }
      }
    } else {
      const std::vector<double> probs = behavior_choice_probabilities(m, p, s, actor);
      const int value = static_cast<int>(sample_index(probs, uniform01(rng)));
      if (value != s.behavior[actor]) {
        s.behavior[actor] = value;
        ++out.behavior_steps;
        if (net_rate_moves)
          lam_net[actor] = rate(m, p, s, actor, Variable::Network, period, &out.diagnostics);
      }
    }
  }
  return out;
}

std::vector<NetworkState> predict_future(const NetworkState& end, const EstimationResult& fit,
                                         int epochs, std::uint64_t seed, bool allow_unconverged) {
  if (epochs < 0) throw InvalidInput("epochs must be non-negative");
  if (!fit.converged && !allow_unconverged)
    throw InvalidInput("refusing to predict from an unconverged fit");
  const ParameterVector& p = fit.estimates;
  if (p.periods() == 0) throw InvalidInput("fit has no periods");
  std::vector<NetworkState> states{end};
  NetworkState current = end;
  for (int e = 0; e < epochs; ++e) {
    current = simulate_period(fit.model, p, current, p.periods() - 1,
                              derive_seed(seed, {static_cast<std::uint64_t>(e)})).state;
    states.push_back(current);
  }
  return states;
}

}  // namespace netpolicy
