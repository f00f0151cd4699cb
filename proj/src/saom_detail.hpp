#pragma once

// Shared internals of the SAOM translation units.

#include <vector>

#include "netpolicy/saom.hpp"

namespace netpolicy::detail {

/// Utility differences f_i(after) - f_i(now) for toggling the tie to each
/// j != i; entry i (no change) is 0. Resizes `out` to n.
void network_change_utilities(const SaomModel& m, const std::vector<double>& beta,
                              const NetworkState& s, NodeId i, std::vector<double>& out);

/// f_i^B with actor i's behavior set to `value`.
double behavior_utility(const SaomModel& m, const std::vector<double>& beta,
                        const NetworkState& s, NodeId i, int value);

/// Sum over actors of each network / behavior evaluation statistic, with the
/// network, behavior and price taken from separate observations.
std::vector<double> total_network_statistics(const SaomModel& m, const Graph& g,
                                             const std::vector<int>& behavior,
                                             const std::vector<double>& price);
std::vector<double> total_behavior_statistics(const SaomModel& m, const Graph& g,
                                              const std::vector<int>& behavior);

}  // namespace netpolicy::detail
