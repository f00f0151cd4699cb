#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netpolicy/dgp.hpp"
#include "netpolicy/sampling.hpp"

namespace netpolicy {

/// Adoption shares of treated and untreated actors per labelled period.
struct PeriodProportions {
  std::vector<std::string> labels;
  std::vector<double> treat;
  std::vector<double> control;
  std::size_t treated_size = 0;
  std::size_t control_size = 0;

  std::optional<std::size_t> find(const std::string& label) const;
  /// control - treatment share in the labelled period.
  double gap(const std::string& label) const;
};

/// Control is every untreated actor. Treated must be non-empty and proper.
PeriodProportions period_proportions(const std::vector<NetworkState>& states,
                                     const std::vector<std::string>& labels,
                                     const NodeSet& treated);

struct EffectEstimates {
  double direct = 0.0;      // gap(B) - gap(A)
  double short_term = 0.0;  // gap(C) - gap(A)
  std::optional<double> long_term;  // gap(D) - gap(A) when D exists
};

/// Needs periods A, B and C; D is optional.
EffectEstimates second_order_difference(const PeriodProportions& p);

struct MannWhitneyResult {
  double u = 0.0;            // U of the first sample, midranks for ties
  double p_two_sided = 1.0;  // exact when both samples have at most 8 values
  bool exact = false;
};

MannWhitneyResult mann_whitney_u(const std::vector<double>& x, const std::vector<double>& y);
/// Permutation p-value over all splits of the pooled midranks.
double mann_whitney_exact_p(const std::vector<double>& x, const std::vector<double>& y);
/// Normal approximation with tie-corrected variance and continuity correction.
double mann_whitney_normal_p(const std::vector<double>& x, const std::vector<double>& y);

inline constexpr std::size_t kExactMannWhitneyLimit = 8;

enum class EffectKind { Direct, ShortTerm, LongTerm };
std::string to_string(EffectKind k);

struct EffectSummaryRow {
  std::string strategy;
  EffectKind effect = EffectKind::Direct;
  double mean = 0.0;
  double iqr = 0.0;
  std::size_t runs = 0;
};

struct PairwiseTest {
  EffectKind effect = EffectKind::Direct;
  std::string first;
  std::string second;
  MannWhitneyResult test;
};

struct RunSummary {
  std::vector<EffectSummaryRow> rows;
  std::vector<PairwiseTest> tests;
};

/// Mean and IQR per strategy and effect, and pairwise tests between
/// strategies. Every strategy needs at least two runs; long-term rows appear
/// only when every run has a long-term value.
RunSummary summarize_runs(
    const std::vector<std::pair<std::string, std::vector<EffectEstimates>>>& runs);

}  // namespace netpolicy
