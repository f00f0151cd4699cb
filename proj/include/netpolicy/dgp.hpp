#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "netpolicy/behavior.hpp"
#include "netpolicy/graph.hpp"
#include "netpolicy/sampling.hpp"

namespace netpolicy {

/// Network, focal behavior and price at one observation.
struct NetworkState {
  Graph graph;
  std::vector<int> behavior;
  std::vector<double> price;

  int num_actors() const { return graph.num_nodes(); }
  int adopters() const;
  friend bool operator==(const NetworkState&, const NetworkState&) = default;
};

/// Initial state: g0 with the table's behavior and price columns.
NetworkState initial_state(const Graph& g0, const ActorTable& actors);

/// Per-event probabilities of the three waves (proportions, not percentages).
struct WaveProbabilities {
  double wave1_dyad_toggle = 5e-5;
  double wave1_behavior_toggle = 1e-5;
  double wave3_loss_distance1 = 0.05;
  double wave3_loss_distance2 = 0.005;
  double wave3_behavior_noise = 5e-4;
  double wave3_form_treated_same = 5e-4;     // both treated, same behavior
  double wave3_form_untreated_same = 5e-5;   // not both treated, same behavior
  double wave3_form_treated_different = 1e-5;
  double wave3_dyad_noise = 1e-6;             // every other dyad, either direction

  static WaveProbabilities zero() {
    return {0, 0, 0, 0, 0, 0, 0, 0, 0};
  }
  void validate() const;
};

nlohmann::json to_json(const WaveProbabilities& p);
/// Missing keys keep their defaults.
WaveProbabilities wave_probabilities_from_json(const nlohmann::json& j);

struct TreatmentAssignment {
  NodeSet treated;
  double price_multiplier = 1.30;
};

/// Independent dyad and behavior toggles; prices untouched.
NetworkState perturb_wave1(const NetworkState& s, const WaveProbabilities& p,
                           std::uint64_t seed);

/// Raises treated prices by the multiplier and re-draws each treated actor's
/// behavior from the adoption model at the new price. Nobody else changes.
NetworkState apply_policy_wave2(const NetworkState& s, const ActorTable& covariates,
                                const TreatmentAssignment& a,
                                const LogisticCoefficients& coeffs, std::uint64_t seed);

/// Behavior loss by graph distance to the treated set (exactly 1, exactly 2,
/// other) and tie formation by (both treated, same behavior) class. Groups are
/// fixed on the input state and every change is applied at once.
NetworkState evolve_wave3(const NetworkState& s, const TreatmentAssignment& a,
                          const WaveProbabilities& p, std::uint64_t seed);

struct Panel {
  std::vector<NetworkState> waves;
  std::vector<std::string> labels;

  std::size_t num_waves() const { return waves.size(); }
  int num_actors() const { return waves.empty() ? 0 : waves.front().num_actors(); }
  void validate() const;
};

/// Waves A (after perturbation), B (after the policy) and C (after evolution).
Panel build_panel(const Graph& g0, const ActorTable& actors, const TreatmentAssignment& a,
                  const LogisticCoefficients& coeffs, const WaveProbabilities& p,
                  std::uint64_t seed);

/// Directory layout: wave_<label>.edges and wave_<label>.csv (actor,behavior,price)
/// per wave, plus manifest.json. `manifest` is merged into the written manifest.
void write_panel(const std::filesystem::path& dir, const Panel& panel,
                 const nlohmann::json& manifest);
Panel read_panel(const std::filesystem::path& dir);

}  // namespace netpolicy
