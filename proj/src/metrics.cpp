#include <algorithm>
#include <cmath>

#include "netpolicy/errors.hpp"
#include "netpolicy/profile.hpp"

namespace netpolicy {

SampleProfile sample_profile(const Graph& g, const NodeSet& set) {
  SampleProfile p;
  p.size = set.members.size();
  if (set.members.empty()) return p;
  std::vector<int> degrees;
  degrees.reserve(set.members.size());
  double clustering = 0.0;
  for (NodeId v : set.members) {
    degrees.push_back(g.degree(v));
    clustering += local_clustering(g, v);
  }
  double total = 0.0;
  for (int d : degrees) total += d;
  p.mean_degree = total / static_cast<double>(degrees.size());
  p.mean_clustering = clustering / static_cast<double>(degrees.size());
  p.degree_distribution = DegreeDistribution::from_degrees(degrees);
  return p;
}

MeanSd mean_sd(std::span<const double> values) {
  MeanSd r;
  if (values.empty()) return r;
  for (double v : values) r.mean += v;
  r.mean /= static_cast<double>(values.size());
  if (values.size() < 2) return r;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return r;
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw InvalidInput("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(prob, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

MeanSd pairwise_jsd(std::span<const DegreeDistribution> dists) {
  std::vector<double> scores;
  for (std::size_t a = 0; a < dists.size(); ++a)
    for (std::size_t b = a + 1; b < dists.size(); ++b)
      scores.push_back(jensen_shannon_divergence(dists[a], dists[b]).value);
  return mean_sd(scores);
}

}  // namespace netpolicy
