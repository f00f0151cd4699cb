#include "netpolicy/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "netpolicy/errors.hpp"
#include "netpolicy/rng.hpp"
#include "parallel.hpp"

namespace netpolicy {

void RunManifest::validate() const {
  if (replications < 1) throw InvalidInput("replications must be at least 1");
  if (graph.n < 2) throw InvalidInput("graph needs at least two actors");
  if (!(graph.exponent > 1.0)) throw InvalidInput("degree exponent must exceed 1");
  if (!(graph.mean_degree >= 0.0) || graph.mean_degree >= graph.n)
    throw InvalidInput("mean degree must lie in [0, n)");
  if (!(price_multiplier > 0.0) || !std::isfinite(price_multiplier))
    throw InvalidInput("price multiplier must be positive");
  if (prediction_epochs < 0) throw InvalidInput("prediction_epochs must be non-negative");
  if (max_refits < 1) throw InvalidInput("max_refits must be at least 1");
  if (threads < 0) throw InvalidInput("threads must be non-negative");
  probabilities.validate();
  effects.validate();
}

namespace {

template <typename T>
void read(const nlohmann::json& j, const char* key, T& into) {
  if (!j.contains(key)) return;
  try {
    into = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("manifest key \"") + key + "\": " + e.what());
  }
}

std::vector<Strategy> parse_strategies(const nlohmann::json& j) {
  std::vector<std::string> names;
  if (j.is_string()) {
    std::string all = j.get<std::string>();
    std::size_t start = 0;
    while (start <= all.size()) {
      const std::size_t comma = all.find(',', start);
      const std::string part = all.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!part.empty()) names.push_back(part);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_string()) throw InvalidInput("strategies must be strings");
      names.push_back(v.get<std::string>());
    }
  } else {
    throw InvalidInput("strategies must be a list or a comma-separated string");
  }
  std::vector<Strategy> out;
  for (const std::string& n : names) {
    const Strategy s = strategy_from_string(n);
    if (std::find(out.begin(), out.end(), s) != out.end())
      throw InvalidInput("strategy " + n + " listed twice");
    out.push_back(s);
  }
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RunManifest manifest_from_json(const nlohmann::json& j) {
  static const char* keys[] = {"seed", "n", "exponent", "mean_degree", "strategies",
                               "price_multiplier", "probabilities", "coefficients", "effects",
                               "estimation", "replications", "prediction_epochs", "max_refits",
                               "independent_cap", "budgeted", "actor_table", "output_dir",
                               "threads", "write_panels"};
  if (!j.is_object()) throw InvalidInput("manifest must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw InvalidInput("unknown manifest key \"" + key + "\"");
  }
  RunManifest m;
  read(j, "seed", m.master_seed);
  read(j, "n", m.graph.n);
  read(j, "exponent", m.graph.exponent);
  read(j, "mean_degree", m.graph.mean_degree);
  if (j.contains("strategies")) m.strategies = parse_strategies(j.at("strategies"));
  read(j, "price_multiplier", m.price_multiplier);
  if (j.contains("probabilities")) m.probabilities = wave_probabilities_from_json(j.at("probabilities"));
  if (j.contains("coefficients")) m.coefficients = coefficients_from_json(j.at("coefficients"));
  if (j.contains("effects")) m.effects = effect_spec_from_json(j.at("effects"));
  if (j.contains("estimation")) m.estimation = estimation_settings_from_json(j.at("estimation"));
  read(j, "replications", m.replications);
  read(j, "prediction_epochs", m.prediction_epochs);
  read(j, "max_refits", m.max_refits);
  if (j.contains("independent_cap") && !j.at("independent_cap").is_null()) {
    std::size_t cap = 0;
    read(j, "independent_cap", cap);
    m.independent_cap = cap;
  }
  if (j.contains("budgeted")) {
    const auto& b = j.at("budgeted");
    if (!b.is_object()) throw InvalidInput("budgeted must be an object");
    read(b, "max_size", m.budgeted.max_size);
    read(b, "budget", m.budgeted.budget);
    read(b, "edge_tolerance", m.budgeted.edge_tolerance);
    read(b, "costs_csv", m.budgeted.costs_csv);
  }
  read(j, "actor_table", m.actor_table);
  std::string out = m.output_dir.string();
  read(j, "output_dir", out);
  m.output_dir = out;
  read(j, "threads", m.threads);
  read(j, "write_panels", m.write_panels);
  m.validate();
  return m;
}

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["seed"] = m.master_seed;
  j["n"] = m.graph.n;
  j["exponent"] = m.graph.exponent;
  j["mean_degree"] = m.graph.mean_degree;
  nlohmann::json strategies = nlohmann::json::array();
  for (Strategy s : m.strategies) strategies.push_back(to_string(s));
  j["strategies"] = strategies;
  j["price_multiplier"] = m.price_multiplier;
  j["probabilities"] = to_json(m.probabilities);
  j["coefficients"] = to_json(m.coefficients);
  j["effects"] = to_json(m.effects);
  j["estimation"] = to_json(m.estimation);
  j["replications"] = m.replications;
  j["prediction_epochs"] = m.prediction_epochs;
  j["max_refits"] = m.max_refits;
  j["independent_cap"] = m.independent_cap ? nlohmann::json(*m.independent_cap) : nlohmann::json(nullptr);
  j["budgeted"] = {{"max_size", m.budgeted.max_size},
                   {"budget", m.budgeted.budget},
                   {"edge_tolerance", m.budgeted.edge_tolerance},
                   {"costs_csv", m.budgeted.costs_csv}};
  j["actor_table"] = m.actor_table;
  j["output_dir"] = m.output_dir.string();
  j["threads"] = m.threads;
  j["write_panels"] = m.write_panels;
  return j;
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config " + path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

std::string manifest_hash(const RunManifest& m) {
  nlohmann::json j = to_json(m);
  j.erase("output_dir");
  j.erase("threads");
  j["estimation"].erase("threads");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

namespace {

// Stream ids under the master seed for one replication.
enum Stream : std::uint64_t { kGraph = 0, kMis = 1, kRandom = 2, kCluster = 3, kPanel = 4, kFit = 5, kPredict = 6 };

struct Shared {
  const RunManifest& manifest;
  ActorTable actors;
  std::vector<double> costs;
};

NodeSet draw_sample(const Shared& sh, const Graph& g0, const NodeSet& mis, Strategy s, int rep) {
  const RunManifest& m = sh.manifest;
  const auto r = static_cast<std::uint64_t>(rep);
  const std::size_t size = mis.members.size();
  switch (s) {
    case Strategy::Independent: return mis;
    case Strategy::Random: return random_sample(g0, size, derive_seed(m.master_seed, {r, kRandom}));
    case Strategy::Cluster: return cluster_sample(g0, size, derive_seed(m.master_seed, {r, kCluster}));
    case Strategy::BudgetedIndependent: {
      BudgetSpec spec;
      spec.max_size = m.budgeted.max_size ? m.budgeted.max_size : size;
      spec.budget = m.budgeted.budget > 0.0 ? m.budgeted.budget : static_cast<double>(size);
      spec.edge_tolerance = m.budgeted.edge_tolerance;
      spec.costs = sh.costs;
      return budgeted_independent_set(g0, spec).set;
    }
  }
  throw InvalidInput("unknown strategy");
}

std::vector<StrategyRun> run_replication(const Shared& sh, int rep) {
  const RunManifest& m = sh.manifest;
  const auto r = static_cast<std::uint64_t>(rep);
  std::vector<StrategyRun> out;
  const Graph g0 = generate_scale_free(m.graph.n, m.graph.exponent, m.graph.mean_degree,
                                       derive_seed(m.master_seed, {r, kGraph}));
  const NodeSet mis =
      maximal_independent_set(g0, derive_seed(m.master_seed, {r, kMis}), m.independent_cap);

  for (Strategy s : m.strategies) {
    const auto started = std::chrono::steady_clock::now();
    StrategyRun run;
    run.replication = rep;
    run.strategy = s;
    const auto sid = static_cast<std::uint64_t>(s);
    try {
      TreatmentAssignment assignment{draw_sample(sh, g0, mis, s, rep), m.price_multiplier};
      run.treated_size = assignment.treated.members.size();
      run.sample_flags = assignment.treated.flags;
      // Every strategy sees the same panel stream: common random numbers.
      const Panel panel = build_panel(g0, sh.actors, assignment, m.coefficients, m.probabilities,
                                      derive_seed(m.master_seed, {r, kPanel}));
      if (m.write_panels) {
        char name[64];
        std::snprintf(name, sizeof name, "panels/rep%03d_%s", rep, to_string(s).c_str());
        run.panel_dir = name;
        nlohmann::json meta = {{"replication", rep},
                               {"strategy", to_string(s)},
                               {"master_seed", m.master_seed},
                               {"panel_seed", derive_seed(m.master_seed, {r, kPanel})},
                               {"probabilities", to_json(m.probabilities)},
                               {"assignment",
                                {{"treated", to_json(assignment.treated)},
                                 {"price_multiplier", assignment.price_multiplier}}}};
        write_panel(m.output_dir / run.panel_dir, panel, meta);
      }

      EstimationSettings settings = m.estimation;
      settings.threads = 1;
      for (int attempt = 0; attempt < m.max_refits; ++attempt) {
        settings.seed = derive_seed(m.master_seed, {r, kFit, sid, static_cast<std::uint64_t>(attempt)});
        run.fit = estimate_mom(panel, m.effects, settings);
        run.fits = attempt + 1;
        if (run.fit.converged) break;
      }
      run.converged = run.fit.converged;

      std::vector<NetworkState> states = panel.waves;
      std::vector<std::string> labels = panel.labels;
      if (run.converged && m.prediction_epochs > 0) {
        const std::vector<NetworkState> future =
            predict_future(panel.waves.back(), run.fit, m.prediction_epochs,
                           derive_seed(m.master_seed, {r, kPredict, sid}));
        states.push_back(future.back());
        labels.push_back("D");
      }
      run.proportions = period_proportions(states, labels, assignment.treated);
      run.effects = second_order_difference(*run.proportions);
    } catch (const InvalidInput& e) {
      run.error = e.what();
    }
    run.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    out.push_back(std::move(run));
  }
  return out;
}

}  // namespace

RunRecord run_experiment(const RunManifest& manifest) {
  manifest.validate();
  const auto started = std::chrono::steady_clock::now();
  Shared sh{manifest, {}, {}};
  const ActorTable table =
      load_actor_table(manifest.actor_table.empty() ? bundled_actor_table()
                                                    : std::filesystem::path(manifest.actor_table));
  sh.actors = table.head(static_cast<std::size_t>(manifest.graph.n));
  if (!manifest.budgeted.costs_csv.empty())
    sh.costs = read_costs_csv(manifest.budgeted.costs_csv, manifest.graph.n);
  std::filesystem::create_directories(manifest.output_dir);

  RunRecord record;
  record.manifest = manifest;
  record.manifest_hash = manifest_hash(manifest);
  std::vector<std::vector<StrategyRun>> per_rep(static_cast<std::size_t>(manifest.replications));
  const int threads = manifest.threads > 0
                          ? manifest.threads
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  detail::parallel_for(per_rep.size(), threads, [&](std::size_t rep) {
    per_rep[rep] = run_replication(sh, static_cast<int>(rep));
  });
  for (auto& list : per_rep)
    for (auto& run : list) record.runs.push_back(std::move(run));

  std::size_t converged = 0;
  std::vector<std::pair<std::string, std::vector<EffectEstimates>>> groups;
  for (Strategy s : manifest.strategies) groups.push_back({to_string(s), {}});
  for (const StrategyRun& run : record.runs) {
    if (!run.converged || !run.effects) {
      ++record.excluded;
      continue;
    }
    ++converged;
    for (auto& g : groups)
      if (g.first == to_string(run.strategy)) g.second.push_back(*run.effects);
  }
  if (!record.runs.empty() && converged == 0) {
    std::string why = "no replication converged";
    for (const StrategyRun& run : record.runs)
      if (!run.error.empty()) {
        why += "; first failure: " + run.error;
        break;
      }
    record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    emit_reports(record);
    throw NonConvergence(why);
  }
  std::vector<std::pair<std::string, std::vector<EffectEstimates>>> usable;
  for (auto& g : groups) {
    if (g.second.size() >= 2) {
      usable.push_back(std::move(g));
    } else {
      record.summary_notes.push_back("strategy " + g.first + " has " +
                                     std::to_string(g.second.size()) +
                                     " converged runs; left out of the summary");
    }
  }
  if (!usable.empty()) record.summary = summarize_runs(usable);
  record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace netpolicy
