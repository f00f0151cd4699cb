#include <algorithm>
#include <cmath>

#include "netpolicy/errors.hpp"
#include "netpolicy/saom.hpp"

namespace netpolicy {

std::string to_string(NetEffect e) {
  switch (e) {
    case NetEffect::Outdegree: return "outdegree";
    case NetEffect::Transitivity: return "transitivity";
    case NetEffect::BehaviorHomophily: return "behavior_homophily";
    case NetEffect::PriceHomophily: return "price_homophily";
  }
  return "unknown";
}

std::string to_string(BehEffect e) {
  switch (e) {
    case BehEffect::LinearShape: return "linear_shape";
    case BehEffect::OutdegreeEffect: return "outdegree_effect";
    case BehEffect::AvgPeerInfluence: return "avg_peer_influence";
  }
  return "unknown";
}

std::string to_string(NetRateEffect e) {
  switch (e) {
    case NetRateEffect::LogOutdegree: return "log_outdegree";
    case NetRateEffect::BehaviorOnNetRate: return "behavior_on_net_rate";
    case NetRateEffect::PriceOnNetRate: return "price_on_net_rate";
  }
  return "unknown";
}

std::string to_string(BehRateEffect e) {
  switch (e) {
    case BehRateEffect::PriceOnBehRate: return "price_on_beh_rate";
  }
  return "unknown";
}

namespace {

template <typename E>
void check_unique(const std::vector<E>& v, const char* what) {
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      if (v[a] == v[b]) throw InvalidInput(std::string("duplicate ") + what + " effect " + to_string(v[a]));
}

}  // namespace

void EffectSpec::validate() const {
  if (std::find(network_eval.begin(), network_eval.end(), NetEffect::Outdegree) == network_eval.end())
    throw InvalidInput("the outdegree effect is required in the network evaluation function");
  check_unique(network_eval, "network evaluation");
  check_unique(behavior_eval, "behavior evaluation");
  check_unique(network_rate, "network rate");
  check_unique(behavior_rate, "behavior rate");
}

SimilarityScale similarity_scale(const std::vector<double>& values) {
  SimilarityScale s;
  if (values.size() < 2) return s;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.range = *hi - *lo;
  if (s.range <= 0.0) return s;
  // Mean over ordered pairs i != j; sorting makes the |x_i - x_j| sum linear.
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double abs_sum = 0.0;  // sum over i < j of (v_j - v_i)
  double prefix = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    abs_sum += static_cast<double>(k) * v[k] - prefix;
    prefix += v[k];
  }
  s.mean_similarity = 1.0 - abs_sum / (s.range * n * (n - 1.0) / 2.0);
  return s;
}

namespace {

std::vector<double> as_double(const std::vector<int>& v) { return {v.begin(), v.end()}; }

SimilarityScale pooled_scale(const std::vector<std::vector<double>>& waves) {
  SimilarityScale out;
  for (const auto& w : waves) out.range = std::max(out.range, similarity_scale(w).range);
  if (out.range <= 0.0) return out;
  double mean = 0.0;
  for (const auto& w : waves) {
    SimilarityScale s = similarity_scale(w);
    if (s.range <= 0.0) {
      mean += 1.0;
      continue;
    }
    // Re-express the wave's mean |difference| on the pooled range.
    mean += 1.0 - (1.0 - s.mean_similarity) * s.range / out.range;
  }
  out.mean_similarity = mean / static_cast<double>(waves.size());
  return out;
}

}  // namespace

ModelScales scales_from_state(const NetworkState& s) {
  ModelScales m;
  m.behavior = similarity_scale(as_double(s.behavior));
  m.price = similarity_scale(s.price);
  return m;
}

ModelScales scales_from_panel(const Panel& p) {
  ModelScales m;
  std::vector<std::vector<double>> beh;
  std::vector<std::vector<double>> price;
  double bsum = 0.0;
  double psum = 0.0;
  double count = 0.0;
  for (const NetworkState& w : p.waves) {
    beh.push_back(as_double(w.behavior));
    price.push_back(w.price);
    for (int b : w.behavior) bsum += b;
    for (double x : w.price) psum += x;
    count += static_cast<double>(w.behavior.size());
  }
  m.behavior = pooled_scale(beh);
  m.price = pooled_scale(price);
  if (count > 0) {
    m.behavior_center = bsum / count;
    m.price_center = psum / count;
  }
  return m;
}

ParameterVector ParameterVector::zeros(const EffectSpec& spec, int periods, double rho_net,
                                       double rho_beh) {
  ParameterVector p;
  p.rho_net.assign(periods, rho_net);
  p.rho_beh.assign(periods, rho_beh);
  p.rho_net_fixed.assign(periods, 0);
  p.rho_beh_fixed.assign(periods, 0);
  p.alpha_net.assign(spec.network_rate.size(), 0.0);
  p.alpha_beh.assign(spec.behavior_rate.size(), 0.0);
  p.beta_net.assign(spec.network_eval.size(), 0.0);
  p.beta_beh.assign(spec.behavior_eval.size(), 0.0);
  return p;
}

void ParameterVector::validate(const EffectSpec& spec) const {
  if (rho_beh.size() != rho_net.size() || rho_net_fixed.size() != rho_net.size() ||
      rho_beh_fixed.size() != rho_beh.size())
    throw InvalidInput("rate vectors disagree on the number of periods");
  if (alpha_net.size() != spec.network_rate.size() || alpha_beh.size() != spec.behavior_rate.size() ||
      beta_net.size() != spec.network_eval.size() || beta_beh.size() != spec.behavior_eval.size())
    throw InvalidInput("parameter vector does not match the effect specification");
  for (double r : rho_net)
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidInput("network rates must be non-negative");
  for (double r : rho_beh)
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidInput("behavior rates must be non-negative");
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(alpha_net) || !finite(alpha_beh) || !finite(beta_net) || !finite(beta_beh))
    throw InvalidInput("non-finite model weight");
}

}  // namespace netpolicy
