#include <algorithm>
#include <cmath>

#include "netpolicy/errors.hpp"
#include "netpolicy/saom.hpp"
#include "saom_detail.hpp"

namespace netpolicy {

std::vector<double> softmax(const std::vector<double>& utilities) {
  std::vector<double> p(utilities.size());
  if (utilities.empty()) return p;
  const double top = *std::max_element(utilities.begin(), utilities.end());
  double z = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) z += (p[k] = std::exp(utilities[k] - top));
  for (double& x : p) x /= z;
  return p;
}

double rate(const SaomModel& m, const ParameterVector& p, const NetworkState& s, NodeId i,
            Variable v, int period, RateDiagnostics* diag) {
  if (period < 0 || period >= p.periods()) throw InvalidInput("period outside the parameter vector");
  double rho = 0.0;
  double h = 0.0;
  if (v == Variable::Network) {
    rho = p.rho_net[period];
    const std::vector<double> st = network_rate_statistics(m, s, i);
    for (std::size_t q = 0; q < st.size(); ++q) h += p.alpha_net[q] * st[q];
  } else {
    rho = p.rho_beh[period];
    const std::vector<double> st = behavior_rate_statistics(m, s, i);
    for (std::size_t q = 0; q < st.size(); ++q) h += p.alpha_beh[q] * st[q];
  }
  if (rho == 0.0) return 0.0;
  if (std::abs(h) > kRateExponentLimit) {
    h = std::clamp(h, -kRateExponentLimit, kRateExponentLimit);
    if (diag) ++diag->clamped;
  }
  return rho * std::exp(h);
}

std::vector<double> network_choice_probabilities(const SaomModel& m, const ParameterVector& p,
                                                 const NetworkState& s, NodeId i) {
  std::vector<double> u;
  detail::network_change_utilities(m, p.beta_net, s, i, u);
  return softmax(u);
}

std::vector<double> behavior_choice_probabilities(const SaomModel& m, const ParameterVector& p,
                                                  const NetworkState& s, NodeId i) {
  return softmax({detail::behavior_utility(m, p.beta_beh, s, i, 0),
                  detail::behavior_utility(m, p.beta_beh, s, i, 1)});
}

}  // namespace netpolicy
