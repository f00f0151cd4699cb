#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "netpolicy/errors.hpp"
#include "netpolicy/experiment.hpp"

namespace netpolicy {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  return out;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  if (!out) throw InvalidInput("write failed for " + path.string());
}

nlohmann::ordered_json proportions_json(const PeriodProportions& p) {
  nlohmann::ordered_json j;
  j["labels"] = p.labels;
  j["treat"] = p.treat;
  j["control"] = p.control;
  j["treated_size"] = p.treated_size;
  j["control_size"] = p.control_size;
  return j;
}

}  // namespace

void emit_reports(const RunRecord& record) {
  const std::filesystem::path dir = record.manifest.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create " + dir.string() + ": " + ec.message());

  {
    auto out = open_out(dir / "parameters.csv");
    out << "replication,strategy,parameter,estimate,se,t_ratio,fixed,converged\n";
    for (const StrategyRun& run : record.runs) {
      for (const ParameterRow& row : run.fit.table) {
        out << run.replication << ',' << to_string(run.strategy) << ',' << row.name << ','
            << num(row.estimate) << ',' << opt(row.standard_error) << ',' << opt(row.t_ratio)
            << ',' << (row.fixed ? 1 : 0) << ',' << (run.converged ? 1 : 0) << '\n';
      }
    }
  }

  {
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const StrategyRun& run : record.runs) {
      nlohmann::ordered_json params = nlohmann::ordered_json::array();
      for (const ParameterRow& row : run.fit.table) {
        nlohmann::ordered_json r;
        r["name"] = row.name;
        r["estimate"] = row.estimate;
        r["se"] = row.standard_error ? nlohmann::ordered_json(*row.standard_error) : nlohmann::ordered_json(nullptr);
        r["t_ratio"] = row.t_ratio ? nlohmann::ordered_json(*row.t_ratio) : nlohmann::ordered_json(nullptr);
        r["fixed"] = row.fixed;
        params.push_back(r);
      }
      nlohmann::ordered_json j;
      j["replication"] = run.replication;
      j["strategy"] = to_string(run.strategy);
      j["converged"] = run.converged;
      j["max_convergence_ratio"] = run.fit.max_convergence_ratio;
      j["fits"] = run.fits;
      j["parameters"] = params;
      runs.push_back(j);
    }
    write_json(dir / "parameters.json", {{"manifest_hash", record.manifest_hash}, {"runs", runs}});
  }

  {
    auto out = open_out(dir / "effects_summary.csv");
    out << "strategy,effect,mean,iqr\n";
    for (const EffectSummaryRow& row : record.summary.rows)
      out << row.strategy << ',' << to_string(row.effect) << ',' << num(row.mean) << ','
          << num(row.iqr) << '\n';
  }

  {
    nlohmann::ordered_json tests = nlohmann::ordered_json::array();
    for (const PairwiseTest& t : record.summary.tests) {
      nlohmann::ordered_json j;
      j["effect"] = to_string(t.effect);
      j["first"] = t.first;
      j["second"] = t.second;
      j["u"] = t.test.u;
      j["p_two_sided"] = t.test.p_two_sided;
      j["exact"] = t.test.exact;
      tests.push_back(j);
    }
    write_json(dir / "pvalues.json", {{"manifest_hash", record.manifest_hash}, {"tests", tests}});
  }

  {
    auto out = open_out(dir / "effects_runs.csv");
    out << "replication,strategy,converged,direct,short_term,long_term\n";
    for (const StrategyRun& run : record.runs) {
      out << run.replication << ',' << to_string(run.strategy) << ',' << (run.converged ? 1 : 0)
          << ',';
      if (run.effects)
        out << num(run.effects->direct) << ',' << num(run.effects->short_term) << ','
            << opt(run.effects->long_term);
      else
        out << ",,";
      out << '\n';
    }
  }

  {
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const StrategyRun& run : record.runs) {
      nlohmann::ordered_json j;
      j["replication"] = run.replication;
      j["strategy"] = to_string(run.strategy);
      j["treated_size"] = run.treated_size;
      j["sample_flags"] = run.sample_flags;
      j["panel_dir"] = run.panel_dir;
      j["converged"] = run.converged;
      j["fits"] = run.fits;
      j["attempts"] = run.fit.attempts;
      j["max_convergence_ratio"] = run.fit.max_convergence_ratio;
      j["rate_clamps"] = run.fit.rate_clamps;
      j["proportions"] = run.proportions ? proportions_json(*run.proportions) : nlohmann::ordered_json(nullptr);
      if (run.effects) {
        j["effects"] = {{"direct", run.effects->direct}, {"short_term", run.effects->short_term}};
        j["effects"]["long_term"] =
            run.effects->long_term ? nlohmann::ordered_json(*run.effects->long_term) : nlohmann::ordered_json(nullptr);
      } else {
        j["effects"] = nullptr;
      }
      j["error"] = run.error;
      j["seconds"] = run.seconds;
      runs.push_back(j);
    }
    nlohmann::ordered_json j;
    j["manifest_hash"] = record.manifest_hash;
    j["manifest"] = to_json(record.manifest);
    j["excluded"] = record.excluded;
    j["summary_notes"] = record.summary_notes;
    j["seconds"] = record.seconds;
    j["runs"] = runs;
    write_json(dir / "run_record.json", j);
  }
}

}  // namespace netpolicy
