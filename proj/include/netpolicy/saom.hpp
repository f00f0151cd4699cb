#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "netpolicy/dgp.hpp"

namespace netpolicy {

enum class NetEffect { Outdegree, Transitivity, BehaviorHomophily, PriceHomophily };
enum class BehEffect { LinearShape, OutdegreeEffect, AvgPeerInfluence };
enum class NetRateEffect { LogOutdegree, BehaviorOnNetRate, PriceOnNetRate };
enum class BehRateEffect { PriceOnBehRate };

std::string to_string(NetEffect e);
std::string to_string(BehEffect e);
std::string to_string(NetRateEffect e);
std::string to_string(BehRateEffect e);

/// Which statistics enter the evaluation and rate functions, in order.
struct EffectSpec {
  std::vector<NetEffect> network_eval{NetEffect::Outdegree, NetEffect::Transitivity,
                                      NetEffect::BehaviorHomophily, NetEffect::PriceHomophily};
  std::vector<BehEffect> behavior_eval{BehEffect::LinearShape, BehEffect::OutdegreeEffect,
                                       BehEffect::AvgPeerInfluence};
  std::vector<NetRateEffect> network_rate;
  std::vector<BehRateEffect> behavior_rate;

  /// Outdegree must be present; no effect may repeat.
  void validate() const;
};

/// Range and mean of the pairwise similarity (range - |x_i - x_j|) / range.
/// A zero range makes every similarity 1, so centred similarities vanish.
struct SimilarityScale {
  double range = 0.0;
  double mean_similarity = 1.0;

  double similarity(double a, double b) const {
    return range > 0.0 ? (range - (a > b ? a - b : b - a)) / range : 1.0;
  }
  double centred(double a, double b) const { return similarity(a, b) - mean_similarity; }
};

SimilarityScale similarity_scale(const std::vector<double>& values);

/// Everything about the covariates that statistics need besides the state.
struct ModelScales {
  SimilarityScale behavior;
  SimilarityScale price;
  double behavior_center = 0.0;  // subtracted from b_i in rate terms
  double price_center = 0.0;     // subtracted from the price in rate terms
};

/// Similarity scales of one state; rate covariates left uncentred.
ModelScales scales_from_state(const NetworkState& s);
/// Scales pooled over all waves: widest range, averaged mean similarity, and
/// rate covariates centred at their panel means.
ModelScales scales_from_panel(const Panel& p);

struct SaomModel {
  EffectSpec spec;
  ModelScales scales;
};

struct ParameterVector {
  std::vector<double> rho_net;  // one per period
  std::vector<double> rho_beh;
  std::vector<char> rho_net_fixed;  // same length as rho_net
  std::vector<char> rho_beh_fixed;
  std::vector<double> alpha_net;  // aligned with spec.network_rate
  std::vector<double> alpha_beh;  // aligned with spec.behavior_rate
  std::vector<double> beta_net;   // aligned with spec.network_eval
  std::vector<double> beta_beh;   // aligned with spec.behavior_eval

  /// Zero weights and the given rates for every period.
  static ParameterVector zeros(const EffectSpec& spec, int periods, double rho_net = 1.0,
                               double rho_beh = 1.0);
  int periods() const { return static_cast<int>(rho_net.size()); }
  void validate(const EffectSpec& spec) const;
};

// ---- statistics ---------------------------------------------------------

/// Values of spec.network_eval for actor i.
std::vector<double> network_eval_statistics(const SaomModel& m, const NetworkState& s, NodeId i);
/// Values of spec.behavior_eval for actor i.
std::vector<double> behavior_eval_statistics(const SaomModel& m, const NetworkState& s, NodeId i);

/// Rate statistics s_iq; the log-outdegree entry is log(degree + 1).
std::vector<double> network_rate_statistics(const SaomModel& m, const NetworkState& s, NodeId i);
std::vector<double> behavior_rate_statistics(const SaomModel& m, const NetworkState& s, NodeId i);

// ---- rates and choices --------------------------------------------------

/// Counts exponent clamps at +-50.
struct RateDiagnostics {
  std::uint64_t clamped = 0;
};

inline constexpr double kRateExponentLimit = 50.0;

enum class Variable { Network, Behavior };

/// rho_m * exp(sum alpha_q s_iq), exponent clamped to +-50. `period` is 0-based.
double rate(const SaomModel& m, const ParameterVector& p, const NetworkState& s, NodeId i,
            Variable v, int period, RateDiagnostics* diag = nullptr);

/// Multinomial logit over toggling the tie to each j != i, with entry i
/// standing for "no change". Sums to 1.
std::vector<double> network_choice_probabilities(const SaomModel& m, const ParameterVector& p,
                                                 const NetworkState& s, NodeId i);

/// Probabilities of ending the micro-step with behavior 0 and with behavior 1.
std::vector<double> behavior_choice_probabilities(const SaomModel& m, const ParameterVector& p,
                                                  const NetworkState& s, NodeId i);

/// Numerically stable softmax.
std::vector<double> softmax(const std::vector<double>& utilities);

// ---- chain --------------------------------------------------------------

/// Off-diagonal entries and diagonal of the intensity matrix over every
/// (graph, behavior) configuration on the actors of `s`; price is held at
/// s.price. State index: dyad bits in row-major i<j order, then behavior bits.
struct IntensityMatrix {
  struct Entry {
    std::uint32_t from;
    std::uint32_t to;
    double rate;
  };
  std::uint32_t num_states = 0;
  std::vector<Entry> off_diagonal;
  std::vector<double> diagonal;
};

inline constexpr std::uint32_t kMaxEnumeratedStates = 1u << 15;

std::uint32_t state_index(const NetworkState& s);
NetworkState state_from_index(std::uint32_t index, int n, const std::vector<double>& price);

IntensityMatrix transition_intensity(const SaomModel& m, const ParameterVector& p,
                                     const NetworkState& s, int period = 0);

struct PeriodOutcome {
  NetworkState state;
  std::uint64_t network_steps = 0;   // micro-steps that changed a tie
  std::uint64_t behavior_steps = 0;  // micro-steps that changed a behavior
  std::uint64_t opportunities = 0;   // all micro-steps, including no-change
  RateDiagnostics diagnostics;
};

/// Runs the chain for one unit of model time from `start`.
PeriodOutcome simulate_period(const SaomModel& m, const ParameterVector& p,
                              const NetworkState& start, int period, std::uint64_t seed);

// ---- estimation ---------------------------------------------------------

struct EstimationSettings {
  int phase1_sims = 50;
  std::vector<int> subphase_iterations{100, 200, 400, 800};
  double initial_gain = 0.2;
  int phase3_sims = 1000;
  double derivative_step = 0.1;   // finite-difference step for weights
  double max_step = 1.0;          // per-iteration cap on weight updates
  int phase3_derivative_sims = 500;  // leading Phase 3 runs reused for D
  int max_retries = 5;            // Phase 2 + 3 reruns after a failed check
  double max_convergence_ratio = 0.25;
  double max_abs_t_ratio = 0.1;
  double fixed_rate = 0.1;        // used for periods without observed change
  int threads = 1;
  std::uint64_t seed = 1;
};

struct ParameterRow {
  std::string name;
  double estimate = 0.0;
  std::optional<double> standard_error;  // absent for fixed parameters
  std::optional<double> t_ratio;         // convergence t-ratio of its statistic
  bool fixed = false;
};

struct PhaseLogEntry {
  int attempt = 0;
  std::string phase;  // "phase1", "phase2.k", "phase3"
  int iterations = 0;
  std::vector<double> theta;  // free parameters at the end of the step
};

struct EstimationResult {
  SaomModel model;
  ParameterVector estimates;
  std::vector<ParameterRow> table;  // every parameter, fixed ones included
  std::vector<std::string> free_names;
  std::vector<double> standard_errors;  // per free parameter
  std::vector<double> t_ratios;         // per free parameter
  double max_convergence_ratio = 0.0;
  bool converged = false;
  int attempts = 0;
  std::uint64_t rate_clamps = 0;
  std::vector<PhaseLogEntry> phase_log;
};

/// Method-of-moments fit conditioned on the first wave.
EstimationResult estimate_mom(const Panel& panel, const EffectSpec& spec,
                              const EstimationSettings& settings);

/// Names of every parameter in table order: per-period network rates, network
/// rate effects, network evaluation effects, then the behavior counterparts.
std::vector<std::string> parameter_names(const EffectSpec& spec, int periods);

/// One moment statistic per parameter (same order as parameter_names) for
/// period transitions starts[m] -> ends[m]. Rates use the Hamming distance and
/// the number of behavior changes; rate effects weight each actor's changes by
/// its start-of-period rate statistic; evaluation effects sum the actor
/// statistics at the period end, where network statistics pair the end network
/// with start behavior and price, and behavior statistics pair the end
/// behavior with the start network.
std::vector<double> moment_statistics(const SaomModel& m, const std::vector<NetworkState>& starts,
                                      const std::vector<NetworkState>& ends);

/// Forward simulation of `epochs` further unit periods with the last period's
/// rates. Element 0 is `end`; element e is the state after e epochs.
std::vector<NetworkState> predict_future(const NetworkState& end, const EstimationResult& fit,
                                         int epochs, std::uint64_t seed,
                                         bool allow_unconverged = false);

// ---- serialisation ------------------------------------------------------

nlohmann::json to_json(const EffectSpec& spec);
EffectSpec effect_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EstimationSettings& s);
EstimationSettings estimation_settings_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EstimationResult& r);

}  // namespace netpolicy
