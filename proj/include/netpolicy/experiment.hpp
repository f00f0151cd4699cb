#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "netpolicy/behavior.hpp"
#include "netpolicy/dgp.hpp"
#include "netpolicy/effects.hpp"
#include "netpolicy/saom.hpp"
#include "netpolicy/sampling.hpp"

namespace netpolicy {

struct GraphParams {
  int n = 300;
  double exponent = 2.5;
  double mean_degree = 6.0;
};

/// Settings of the budgeted strategy; sizes of zero mean "the MIS size".
struct BudgetedStrategyParams {
  std::size_t max_size = 0;
  double budget = 0.0;
  std::size_t edge_tolerance = 0;
  std::string costs_csv;  // empty: unit costs
};

struct RunManifest {
  std::uint64_t master_seed = 1;
  GraphParams graph;
  std::vector<Strategy> strategies{Strategy::Independent, Strategy::Random, Strategy::Cluster};
  double price_multiplier = 1.30;
  WaveProbabilities probabilities;
  LogisticCoefficients coefficients;
  EffectSpec effects;
  EstimationSettings estimation;
  int replications = 50;
  int prediction_epochs = 1;
  int max_refits = 5;
  std::optional<std::size_t> independent_cap;
  BudgetedStrategyParams budgeted;
  std::string actor_table;  // empty: the bundled table
  std::filesystem::path output_dir = "out";
  int threads = 0;           // 0: hardware concurrency
  bool write_panels = true;

  void validate() const;
};

/// Unknown keys are rejected; absent keys keep their defaults.
RunManifest manifest_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunManifest& m);
RunManifest load_manifest(const std::filesystem::path& path);
/// FNV-1a over the canonical JSON of everything that affects results
/// (output directory and thread count excluded), as 16 hex digits.
std::string manifest_hash(const RunManifest& m);

struct StrategyRun {
  int replication = 0;
  Strategy strategy = Strategy::Independent;
  std::size_t treated_size = 0;
  std::vector<std::string> sample_flags;
  bool converged = false;
  int fits = 0;
  EstimationResult fit;
  std::optional<PeriodProportions> proportions;
  std::optional<EffectEstimates> effects;
  std::string panel_dir;  // relative to the output directory
  std::string error;      // set when the replication failed before fitting
  double seconds = 0.0;
};

struct RunRecord {
  RunManifest manifest;
  std::string manifest_hash;
  std::vector<StrategyRun> runs;  // ordered by (replication, strategy)
  RunSummary summary;             // converged runs only
  std::vector<std::string> summary_notes;
  std::size_t excluded = 0;
  double seconds = 0.0;
};

/// Raised when no replication converged.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunRecord run_experiment(const RunManifest& manifest);

/// parameters.csv/.json, effects_summary.csv, pvalues.json, effects_runs.csv
/// and run_record.json under record.manifest.output_dir.
void emit_reports(const RunRecord& record);

}  // namespace netpolicy
