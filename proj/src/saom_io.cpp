#include <cmath>
#include <nlohmann/json.hpp>

#include "netpolicy/errors.hpp"
#include "netpolicy/saom.hpp"

namespace netpolicy {
namespace {

template <typename E, std::size_t N>
E parse_effect(const std::string& name, const E (&options)[N], const char* what) {
  for (E e : options)
    if (to_string(e) == name) return e;
  throw InvalidInput(std::string("unknown ") + what + " effect \"" + name + "\"");
}

template <typename E, std::size_t N>
std::vector<E> parse_list(const nlohmann::json& j, const char* key, const E (&options)[N],
                          const char* what, std::vector<E> fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_array()) throw InvalidInput(std::string(key) + " must be an array");
  std::vector<E> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_string()) throw InvalidInput(std::string(key) + " entries must be strings");
    out.push_back(parse_effect(v.get<std::string>(), options, what));
  }
  return out;
}

template <typename E>
nlohmann::json names(const std::vector<E>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (E e : v) out.push_back(to_string(e));
  return out;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const EffectSpec& spec) {
  return nlohmann::ordered_json{{"network_eval", names(spec.network_eval)},
                                {"behavior_eval", names(spec.behavior_eval)},
                                {"network_rate", names(spec.network_rate)},
                                {"behavior_rate", names(spec.behavior_rate)}};
}

EffectSpec effect_spec_from_json(const nlohmann::json& j) {
  static const NetEffect net[] = {NetEffect::Outdegree, NetEffect::Transitivity,
                                  NetEffect::BehaviorHomophily, NetEffect::PriceHomophily};
  static const BehEffect beh[] = {BehEffect::LinearShape, BehEffect::OutdegreeEffect,
                                  BehEffect::AvgPeerInfluence};
  static const NetRateEffect net_rate[] = {NetRateEffect::LogOutdegree,
                                           NetRateEffect::BehaviorOnNetRate,
                                           NetRateEffect::PriceOnNetRate};
  static const BehRateEffect beh_rate[] = {BehRateEffect::PriceOnBehRate};
  if (!j.is_object()) throw InvalidInput("effect specification must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "network_eval" && key != "behavior_eval" && key != "network_rate" &&
        key != "behavior_rate")
      throw InvalidInput("unknown effect specification key \"" + key + "\"");
  EffectSpec defaults;
  EffectSpec spec;
  spec.network_eval = parse_list(j, "network_eval", net, "network evaluation", defaults.network_eval);
  spec.behavior_eval = parse_list(j, "behavior_eval", beh, "behavior evaluation", defaults.behavior_eval);
  spec.network_rate = parse_list(j, "network_rate", net_rate, "network rate", defaults.network_rate);
  spec.behavior_rate = parse_list(j, "behavior_rate", beh_rate, "behavior rate", defaults.behavior_rate);
  spec.validate();
  return spec;
}

nlohmann::json to_json(const EstimationSettings& s) {
  return nlohmann::ordered_json{{"phase1_sims", s.phase1_sims},
                                {"subphase_iterations", s.subphase_iterations},
                                {"initial_gain", s.initial_gain},
                                {"phase3_sims", s.phase3_sims},
                                {"phase3_derivative_sims", s.phase3_derivative_sims},
                                {"derivative_step", s.derivative_step},
                                {"max_step", s.max_step},
                                {"max_retries", s.max_retries},
                                {"max_convergence_ratio", s.max_convergence_ratio},
                                {"max_abs_t_ratio", s.max_abs_t_ratio},
                                {"fixed_rate", s.fixed_rate},
                                {"threads", s.threads},
                                {"seed", s.seed}};
}

EstimationSettings estimation_settings_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("estimation settings must be a JSON object");
  EstimationSettings s;
  const nlohmann::json known = to_json(s);
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw InvalidInput("unknown estimation setting \"" + key + "\"");
  try {
    s.phase1_sims = j.value("phase1_sims", s.phase1_sims);
    s.subphase_iterations = j.value("subphase_iterations", s.subphase_iterations);
    s.initial_gain = j.value("initial_gain", s.initial_gain);
    s.phase3_sims = j.value("phase3_sims", s.phase3_sims);
    s.phase3_derivative_sims = j.value("phase3_derivative_sims", s.phase3_derivative_sims);
    s.derivative_step = j.value("derivative_step", s.derivative_step);
    s.max_step = j.value("max_step", s.max_step);
    s.max_retries = j.value("max_retries", s.max_retries);
    s.max_convergence_ratio = j.value("max_convergence_ratio", s.max_convergence_ratio);
    s.max_abs_t_ratio = j.value("max_abs_t_ratio", s.max_abs_t_ratio);
    s.fixed_rate = j.value("fixed_rate", s.fixed_rate);
    s.threads = j.value("threads", s.threads);
    s.seed = j.value("seed", s.seed);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("estimation settings: ") + e.what());
  }
  if (s.phase1_sims < 1 || s.phase3_sims < 2 || s.max_retries < 0 || s.threads < 1 ||
      !(s.initial_gain > 0.0) || !(s.derivative_step > 0.0) || !(s.fixed_rate > 0.0))
    throw InvalidInput("estimation settings out of range");
  return s;
}

nlohmann::json to_json(const EstimationResult& r) {
  nlohmann::ordered_json j;
  j["converged"] = r.converged;
  j["max_convergence_ratio"] = number_or_null(r.max_convergence_ratio);
  j["attempts"] = r.attempts;
  j["rate_clamps"] = r.rate_clamps;
  j["effects"] = to_json(r.model.spec);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ParameterRow& row : r.table) {
    nlohmann::ordered_json o;
    o["name"] = row.name;
    o["estimate"] = number_or_null(row.estimate);
    o["se"] = row.standard_error ? number_or_null(*row.standard_error) : nlohmann::json(nullptr);
    o["t_ratio"] = row.t_ratio ? number_or_null(*row.t_ratio) : nlohmann::json(nullptr);
    o["fixed"] = row.fixed;
    rows.push_back(std::move(o));
  }
  j["parameters"] = rows;
  nlohmann::ordered_json log = nlohmann::ordered_json::array();
  for (const PhaseLogEntry& e : r.phase_log)
    log.push_back({{"attempt", e.attempt}, {"phase", e.phase}, {"iterations", e.iterations},
                   {"theta", e.theta}});
  j["phase_log"] = log;
  return j;
}

}  // namespace netpolicy
