#include "netpolicy/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "netpolicy/errors.hpp"
#include "netpolicy/rng.hpp"

namespace netpolicy {
namespace {

// Stream ids under a wave seed.
constexpr std::uint64_t kDyadStream = 1;
constexpr std::uint64_t kBehaviorStream = 2;

// Row-major enumeration of unordered pairs i < j.
class PairIndex {
 public:
  explicit PairIndex(int n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {
    for (int i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + static_cast<std::uint64_t>(n - 1 - i);
  }
  std::uint64_t count() const { return offsets_.back(); }
  std::pair<int, int> decode(std::uint64_t k) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), k);
    const int i = static_cast<int>(it - offsets_.begin()) - 1;
    return {i, i + 1 + static_cast<int>(k - offsets_[i])};
  }

 private:
  int n_;
  std::vector<std::uint64_t> offsets_;
};

// Visits every dyad whose probability (from `prob`, at most p_max) fires.
// Candidates come at rate p_max and are thinned, so the cost is O(n + hits).
template <typename Prob, typename Fire>
void dyad_pass(int n, double p_max, Rng& rng, Prob&& prob, Fire&& fire) {
  if (p_max <= 0.0 || n < 2) return;
  PairIndex pairs(n);
  for_each_bernoulli(pairs.count(), p_max, rng, [&](std::uint64_t k) {
    auto [i, j] = pairs.decode(k);
    const double p = prob(i, j);
    if (p >= p_max || uniform01(rng) * p_max < p) fire(i, j);
  });
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidInput(std::string("probability ") + name + " outside [0, 1]");
}

void check_state(const NetworkState& s) {
  const auto n = static_cast<std::size_t>(s.num_actors());
  if (s.behavior.size() != n || s.price.size() != n)
    throw InvalidInput("state vectors do not match the actor count");
  for (int b : s.behavior)
    if (b != 0 && b != 1) throw InvalidInput("behavior must be 0 or 1");
}

}  // namespace

int NetworkState::adopters() const {
  int k = 0;
  for (int b : behavior) k += b;
  return k;
}

NetworkState initial_state(const Graph& g0, const ActorTable& actors) {
  if (actors.size() != static_cast<std::size_t>(g0.num_nodes()))
    throw InvalidInput("actor table has " + std::to_string(actors.size()) + " rows for " +
                       std::to_string(g0.num_nodes()) + " actors");
  return {g0, actors.behaviors(), actors.prices()};
}

void WaveProbabilities::validate() const {
  check_probability(wave1_dyad_toggle, "wave1_dyad_toggle");
  check_probability(wave1_behavior_toggle, "wave1_behavior_toggle");
  check_probability(wave3_loss_distance1, "wave3_loss_distance1");
  check_probability(wave3_loss_distance2, "wave3_loss_distance2");
  check_probability(wave3_behavior_noise, "wave3_behavior_noise");
  check_probability(wave3_form_treated_same, "wave3_form_treated_same");
  check_probability(wave3_form_untreated_same, "wave3_form_untreated_same");
  check_probability(wave3_form_treated_different, "wave3_form_treated_different");
  check_probability(wave3_dyad_noise, "wave3_dyad_noise");
}

nlohmann::json to_json(const WaveProbabilities& p) {
  return nlohmann::ordered_json{
      {"wave1_dyad_toggle", p.wave1_dyad_toggle},
      {"wave1_behavior_toggle", p.wave1_behavior_toggle},
      {"wave3_loss_distance1", p.wave3_loss_distance1},
      {"wave3_loss_distance2", p.wave3_loss_distance2},
      {"wave3_behavior_noise", p.wave3_behavior_noise},
      {"wave3_form_treated_same", p.wave3_form_treated_same},
      {"wave3_form_untreated_same", p.wave3_form_untreated_same},
      {"wave3_form_treated_different", p.wave3_form_treated_different},
      {"wave3_dyad_noise", p.wave3_dyad_noise}};
}

WaveProbabilities wave_probabilities_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("wave probabilities must be a JSON object");
  WaveProbabilities p;
  const nlohmann::json defaults = to_json(p);
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key)) throw InvalidInput("unknown wave probability \"" + key + "\"");
    if (!value.is_number()) throw InvalidInput("wave probability \"" + key + "\" must be a number");
  }
  p.wave1_dyad_toggle = j.value("wave1_dyad_toggle", p.wave1_dyad_toggle);
  p.wave1_behavior_toggle = j.value("wave1_behavior_toggle", p.wave1_behavior_toggle);
  p.wave3_loss_distance1 = j.value("wave3_loss_distance1", p.wave3_loss_distance1);
  p.wave3_loss_distance2 = j.value("wave3_loss_distance2", p.wave3_loss_distance2);
  p.wave3_behavior_noise = j.value("wave3_behavior_noise", p.wave3_behavior_noise);
  p.wave3_form_treated_same = j.value("wave3_form_treated_same", p.wave3_form_treated_same);
  p.wave3_form_untreated_same = j.value("wave3_form_untreated_same", p.wave3_form_untreated_same);
  p.wave3_form_treated_different =
      j.value("wave3_form_treated_different", p.wave3_form_treated_different);
  p.wave3_dyad_noise = j.value("wave3_dyad_noise", p.wave3_dyad_noise);
  p.validate();
  return p;
}

NetworkState perturb_wave1(const NetworkState& s, const WaveProbabilities& p,
                           std::uint64_t seed) {
  check_state(s);
  p.validate();
  NetworkState out = s;
  Rng dyads = make_rng(derive_seed(seed, {kDyadStream}));
  dyad_pass(
      s.num_actors(), p.wave1_dyad_toggle, dyads, [&](int, int) { return p.wave1_dyad_toggle; },
      [&](int i, int j) { out.graph.toggle_edge(i, j); });
  Rng beh = make_rng(derive_seed(seed, {kBehaviorStream}));
  for_each_bernoulli(out.behavior.size(), p.wave1_behavior_toggle, beh,
                     [&](std::uint64_t i) { out.behavior[i] ^= 1; });
  return out;
}

NetworkState apply_policy_wave2(const NetworkState& s, const ActorTable& covariates,
                                const TreatmentAssignment& a,
                                const LogisticCoefficients& coeffs, std::uint64_t seed) {
  check_state(s);
  if (!(a.price_multiplier > 0.0) || !std::isfinite(a.price_multiplier))
    throw InvalidInput("price multiplier must be positive");
  if (covariates.size() != static_cast<std::size_t>(s.num_actors()))
    throw InvalidInput("covariate table does not match the actor count");
  const std::vector<char> treated = a.treated.indicator(s.num_actors());
  NetworkState out = s;
  Rng rng = make_rng(derive_seed(seed, {kBehaviorStream}));
  for (NodeId i : a.treated.members) {
    if (!treated[i]) continue;
    out.price[i] = s.price[i] * a.price_multiplier;
    Actor row = covariates.rows[i];
    row.pric = out.price[i];
    out.behavior[i] = draw_behavior(adopt_probability(coeffs, row), rng);
  }
  return out;
}

NetworkState evolve_wave3(const NetworkState& s, const TreatmentAssignment& a,
                          const WaveProbabilities& p, std::uint64_t seed) {
  check_state(s);
  p.validate();
  const int n = s.num_actors();
  const std::vector<char> treated = a.treated.indicator(n);
  NetworkState out = s;

  const std::vector<int> dist = distances_from(s.graph, a.treated.members);
  Rng beh = make_rng(derive_seed(seed, {kBehaviorStream}));
  for (int i = 0; i < n; ++i) {
    // One uniform per actor keeps the stream aligned whatever the group.
    const double u = uniform01(beh);
    if (dist[i] == 1) {
      if (s.behavior[i] == 1 && u < p.wave3_loss_distance1) out.behavior[i] = 0;
    } else if (dist[i] == 2) {
      if (s.behavior[i] == 1 && u < p.wave3_loss_distance2) out.behavior[i] = 0;
    } else if (u < p.wave3_behavior_noise) {
      out.behavior[i] ^= 1;
    }
  }

  auto prob = [&](int i, int j) {
    if (s.graph.has_edge(i, j)) return p.wave3_dyad_noise;
    const bool both = treated[i] && treated[j];
    const bool same = s.behavior[i] == s.behavior[j];
    if (both && same) return p.wave3_form_treated_same;
    if (same) return p.wave3_form_untreated_same;
    if (both) return p.wave3_form_treated_different;
    return p.wave3_dyad_noise;
  };
  const double p_max = std::max({p.wave3_form_treated_same, p.wave3_form_untreated_same,
                                 p.wave3_form_treated_different, p.wave3_dyad_noise});
  Rng dyads = make_rng(derive_seed(seed, {kDyadStream}));
  dyad_pass(n, p_max, dyads, prob, [&](int i, int j) { out.graph.toggle_edge(i, j); });
  return out;
}

void Panel::validate() const {
  if (waves.size() < 2) throw InvalidInput("a panel needs at least two waves");
  if (labels.size() != waves.size()) throw InvalidInput("panel labels do not match waves");
  for (const NetworkState& w : waves) {
    check_state(w);
    if (w.num_actors() != waves.front().num_actors())
      throw InvalidInput("panel waves differ in actor count");
  }
}

Panel build_panel(const Graph& g0, const ActorTable& actors, const TreatmentAssignment& a,
                  const LogisticCoefficients& coeffs, const WaveProbabilities& p,
                  std::uint64_t seed) {
  NetworkState s0 = initial_state(g0, actors);
  Panel panel;
  panel.labels = {"A", "B", "C"};
  panel.waves.push_back(perturb_wave1(s0, p, derive_seed(seed, {1})));
  panel.waves.push_back(apply_policy_wave2(panel.waves[0], actors, a, coeffs, derive_seed(seed, {2})));
  panel.waves.push_back(evolve_wave3(panel.waves[1], a, p, derive_seed(seed, {3})));
  return panel;
}

}  // namespace netpolicy
