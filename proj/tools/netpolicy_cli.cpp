#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "netpolicy/errors.hpp"
#include "netpolicy/experiment.hpp"
#include "netpolicy/graph_io.hpp"

using namespace netpolicy;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, const char* out_help) {
  sub->add_option("--config", c.config, "RunManifest JSON file")->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "master seed (overrides the config)");
  sub->add_option("--out", c.out, out_help);
}

RunManifest manifest_for(const Common& c) {
  RunManifest m = c.config.empty() ? RunManifest{} : load_manifest(c.config);
  if (c.seed) m.master_seed = *c.seed;
  if (!c.out.empty()) m.output_dir = c.out;
  m.validate();
  return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

ActorTable actors_for(const RunManifest& m) {
  const ActorTable t = load_actor_table(
      m.actor_table.empty() ? bundled_actor_table() : std::filesystem::path(m.actor_table));
  return t.head(static_cast<std::size_t>(m.graph.n));
}

NodeSet treated_from_panel(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw InvalidInput("missing " + (dir / "manifest.json").string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("panel manifest: ") + e.what());
  }
  if (!j.contains("assignment") || !j["assignment"].contains("treated"))
    throw ParseError("panel manifest has no assignment.treated");
  return node_set_from_json(j["assignment"]["treated"]);
}

NodeSet draw(const RunManifest& m, const Graph& g, Strategy s, std::size_t size) {
  const NodeSet mis = maximal_independent_set(g, derive_seed(m.master_seed, {0, 1}), m.independent_cap);
  if (size == 0) size = mis.members.size();
  switch (s) {
    case Strategy::Independent: return mis;
    case Strategy::Random: return random_sample(g, size, derive_seed(m.master_seed, {0, 2}));
    case Strategy::Cluster: return cluster_sample(g, size, derive_seed(m.master_seed, {0, 3}));
    case Strategy::BudgetedIndependent: {
      BudgetSpec spec;
      spec.max_size = m.budgeted.max_size ? m.budgeted.max_size : size;
      spec.budget = m.budgeted.budget > 0.0 ? m.budgeted.budget : static_cast<double>(size);
      spec.edge_tolerance = m.budgeted.edge_tolerance;
      if (!m.budgeted.costs_csv.empty()) spec.costs = read_costs_csv(m.budgeted.costs_csv, g.num_nodes());
      return budgeted_independent_set(g, spec).set;
    }
  }
  throw InvalidInput("unknown strategy");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network sampling and policy spillover simulator"};
  app.require_subcommand(1);

  Common gen_c;
  auto* gen = app.add_subcommand("generate", "scale-free graph and its metrics");
  add_common(gen, gen_c, "output directory");

  Common smp_c;
  std::string smp_graph, smp_strategy = "independent";
  std::size_t smp_size = 0;
  auto* smp = app.add_subcommand("sample", "draw a treatment set");
  add_common(smp, smp_c, "output JSON file");
  smp->add_option("--graph", smp_graph, "edge list (default: generate from the config)")
      ->check(CLI::ExistingFile);
  smp->add_option("--strategy", smp_strategy, "independent, random, cluster or budgeted");
  smp->add_option("--size", smp_size, "target size for random/cluster (default |MIS|)");

  Common sim_c;
  std::string sim_strategy = "independent";
  auto* sim = app.add_subcommand("simulate", "build the three-wave panel");
  add_common(sim, sim_c, "panel directory");
  sim->add_option("--strategy", sim_strategy, "treatment strategy");

  Common fit_c;
  std::string fit_panel;
  auto* fit = app.add_subcommand("fit", "method-of-moments SAOM fit of a panel");
  add_common(fit, fit_c, "output JSON file");
  fit->add_option("--panel", fit_panel, "panel directory")->required()->check(CLI::ExistingDirectory);

  Common eff_c;
  std::string eff_panel;
  bool eff_predict = false;
  auto* eff = app.add_subcommand("effects", "treatment-control gaps of a panel");
  add_common(eff, eff_c, "output JSON file");
  eff->add_option("--panel", eff_panel, "panel directory")->required()->check(CLI::ExistingDirectory);
  eff->add_flag("--predict", eff_predict, "fit the panel and add the predicted period D");

  Common exp_c;
  std::optional<int> exp_reps;
  std::string exp_strategies;
  auto* exp = app.add_subcommand("experiment", "full replication pipeline and reports");
  add_common(exp, exp_c, "output directory");
  exp->add_option("--reps", exp_reps, "replication count")->check(CLI::PositiveNumber);
  exp->add_option("--strategies", exp_strategies, "comma-separated strategy list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      const RunManifest m = manifest_for(gen_c);
      const Graph g = generate_scale_free(m.graph.n, m.graph.exponent, m.graph.mean_degree,
                                          derive_seed(m.master_seed, {0, 0}));
      const std::filesystem::path dir = gen_c.out.empty() ? "." : gen_c.out;
      std::filesystem::create_directories(dir);
      write_edge_list(dir / "graph.edges", g);
      write_text(dir / "metrics.json", metrics_json(graph_metrics(g)) + "\n");
      std::cout << metrics_json(graph_metrics(g)) << "\n";
    } else if (*smp) {
      const RunManifest m = manifest_for(smp_c);
      const Graph g = smp_graph.empty()
                          ? generate_scale_free(m.graph.n, m.graph.exponent, m.graph.mean_degree,
                                                derive_seed(m.master_seed, {0, 0}))
                          : read_edge_list(std::filesystem::path(smp_graph));
      const NodeSet s = draw(m, g, strategy_from_string(smp_strategy), smp_size);
      const std::string text = to_json(s).dump(2) + "\n";
      if (smp_c.out.empty())
        std::cout << text;
      else
        write_text(smp_c.out, text);
    } else if (*sim) {
      const RunManifest m = manifest_for(sim_c);
      const Graph g = generate_scale_free(m.graph.n, m.graph.exponent, m.graph.mean_degree,
                                          derive_seed(m.master_seed, {0, 0}));
      const TreatmentAssignment a{draw(m, g, strategy_from_string(sim_strategy), 0),
                                  m.price_multiplier};
      const Panel panel = build_panel(g, actors_for(m), a, m.coefficients, m.probabilities,
                                      derive_seed(m.master_seed, {0, 4}));
      const std::filesystem::path dir = sim_c.out.empty() ? "panel" : sim_c.out;
      write_panel(dir, panel,
                  {{"master_seed", m.master_seed},
                   {"strategy", sim_strategy},
                   {"probabilities", to_json(m.probabilities)},
                   {"assignment",
                    {{"treated", to_json(a.treated)}, {"price_multiplier", a.price_multiplier}}}});
      std::cout << "wrote " << dir.string() << " (" << a.treated.members.size() << " treated)\n";
    } else if (*fit) {
      const RunManifest m = manifest_for(fit_c);
      EstimationSettings settings = m.estimation;
      if (fit_c.seed) settings.seed = *fit_c.seed;
      const EstimationResult r = estimate_mom(read_panel(fit_panel), m.effects, settings);
      const std::string text = to_json(r).dump(2) + "\n";
      if (fit_c.out.empty())
        std::cout << text;
      else
        write_text(fit_c.out, text);
      if (!r.converged) {
        std::cerr << "fit did not converge (max convergence ratio " << r.max_convergence_ratio
                  << ")\n";
        return 3;
      }
    } else if (*eff) {
      const RunManifest m = manifest_for(eff_c);
      const Panel panel = read_panel(eff_panel);
      const NodeSet treated = treated_from_panel(eff_panel);
      std::vector<NetworkState> states = panel.waves;
      std::vector<std::string> labels = panel.labels;
      nlohmann::json extra = nlohmann::json::object();
      if (eff_predict) {
        EstimationSettings settings = m.estimation;
        settings.seed = derive_seed(m.master_seed, {0, 5});
        const EstimationResult r = estimate_mom(panel, m.effects, settings);
        extra["converged"] = r.converged;
        extra["max_convergence_ratio"] = r.max_convergence_ratio;
        if (!r.converged) {
          std::cerr << "fit did not converge; no prediction made\n";
          return 3;
        }
        states.push_back(predict_future(panel.waves.back(), r, std::max(1, m.prediction_epochs),
                                        derive_seed(m.master_seed, {0, 6}))
                             .back());
        labels.push_back("D");
      }
      const PeriodProportions p = period_proportions(states, labels, treated);
      const EffectEstimates e = second_order_difference(p);
      nlohmann::json j = extra;
      j["labels"] = p.labels;
      j["treat"] = p.treat;
      j["control"] = p.control;
      j["direct"] = e.direct;
      j["short_term"] = e.short_term;
      j["long_term"] = e.long_term ? nlohmann::json(*e.long_term) : nlohmann::json(nullptr);
      const std::string text = j.dump(2) + "\n";
      if (eff_c.out.empty())
        std::cout << text;
      else
        write_text(eff_c.out, text);
    } else if (*exp) {
      RunManifest m = manifest_for(exp_c);
      if (exp_reps) m.replications = *exp_reps;
      if (!exp_strategies.empty())
        m = manifest_from_json([&] {
          nlohmann::json j = to_json(m);
          j["strategies"] = exp_strategies;
          return j;
        }());
      const RunRecord record = run_experiment(m);
      emit_reports(record);
      std::cout << "runs " << record.runs.size() << ", excluded " << record.excluded
                << ", reports in " << m.output_dir.string() << "\n";
      for (const std::string& note : record.summary_notes) std::cerr << note << "\n";
    }
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
