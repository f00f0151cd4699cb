#pragma once

#include "netpolicy/graph.hpp"
#include "netpolicy/sampling.hpp"
#include "netpolicy/stats.hpp"

namespace netpolicy {

/// Structure seen from a treatment group: degrees and local clustering of the
/// members, measured in the full graph.
struct SampleProfile {
  std::size_t size = 0;
  double mean_degree = 0.0;
  double mean_clustering = 0.0;
  DegreeDistribution degree_distribution;
};

SampleProfile sample_profile(const Graph& g, const NodeSet& set);

/// Mean JSD over all unordered pairs of distributions.
MeanSd pairwise_jsd(std::span<const DegreeDistribution> dists);

}  // namespace netpolicy
