#include <gtest/gtest.h>

#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "netpolicy/errors.hpp"
#include "netpolicy/experiment.hpp"

using namespace netpolicy;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunManifest smoke(const std::string& dir) {
  RunManifest m = manifest_from_json(nlohmann::json::parse(R"({
    "seed": 11, "n": 30, "replications": 2, "threads": 2
  })"));
  m.output_dir = std::filesystem::temp_directory_path() / dir;
  std::filesystem::remove_all(m.output_dir);
  return m;
}

}  // namespace

TEST(Manifest, Defaults) {
  const RunManifest m = manifest_from_json(nlohmann::json::object());
  EXPECT_EQ(m.replications, 50);
  EXPECT_EQ(m.graph.n, 300);
  EXPECT_EQ(m.strategies.size(), 3u);
  EXPECT_DOUBLE_EQ(m.price_multiplier, 1.30);
}

TEST(Manifest, Rejects) {
  auto bad = [](const char* text) { return manifest_from_json(nlohmann::json::parse(text)); };
  EXPECT_THROW(bad(R"({"replications": 0})"), InvalidInput);
  EXPECT_THROW(bad(R"({"probabilities": {"wave1_dyad_toggle": 2}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"strategies": ["independent", "snowball"]})"), InvalidInput);
  EXPECT_THROW(bad(R"({"colour": "red"})"), InvalidInput);
  EXPECT_THROW(bad(R"({"n": "many"})"), InvalidInput);
}

TEST(Manifest, HashIgnoresOutputLocation) {
  RunManifest a = manifest_from_json(nlohmann::json::object());
  RunManifest b = a;
  b.output_dir = "elsewhere";
  b.threads = 7;
  EXPECT_EQ(manifest_hash(a), manifest_hash(b));
  b.master_seed += 1;
  EXPECT_NE(manifest_hash(a), manifest_hash(b));
  EXPECT_EQ(manifest_hash(manifest_from_json(to_json(a))), manifest_hash(a));
}

TEST(Experiment, SmokeRunIsReproducible) {
  const RunManifest first = smoke("np_exp_a");
  const RunManifest second = smoke("np_exp_b");
  const auto started = std::chrono::steady_clock::now();
  const RunRecord ra = run_experiment(first);
  emit_reports(ra);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count(), 60.0);
  const RunRecord rb = run_experiment(second);
  emit_reports(rb);
  for (const char* f : {"parameters.csv", "effects_summary.csv", "effects_runs.csv"})
    EXPECT_EQ(slurp(first.output_dir / f), slurp(second.output_dir / f)) << f;
  for (const char* f : {"parameters.json", "pvalues.json", "run_record.json"})
    EXPECT_TRUE(std::filesystem::exists(first.output_dir / f)) << f;
  EXPECT_EQ(ra.runs.size(), 6u);
  for (const StrategyRun& run : ra.runs) {
    if (run.panel_dir.empty()) continue;
    EXPECT_TRUE(std::filesystem::exists(first.output_dir / run.panel_dir / "manifest.json"));
  }
  // Re-emitting the same record gives the same files.
  const std::string before = slurp(first.output_dir / "parameters.csv");
  emit_reports(ra);
  EXPECT_EQ(slurp(first.output_dir / "parameters.csv"), before);
}

TEST(Experiment, StrategiesShareWaveA) {
  RunManifest m = smoke("np_exp_c");
  m.replications = 1;
  m.write_panels = false;
  const RunRecord r = run_experiment(m);
  ASSERT_EQ(r.runs.size(), 3u);
  for (const StrategyRun& run : r.runs) {
    EXPECT_TRUE(run.error.empty()) << run.error;
    ASSERT_TRUE(run.proportions.has_value());
    // Same panel seed: period A shares agree across strategies up to the split.
    const double a = run.proportions->treat[0] * run.proportions->treated_size +
                     run.proportions->control[0] * run.proportions->control_size;
    const double first = r.runs[0].proportions->treat[0] * r.runs[0].proportions->treated_size +
                         r.runs[0].proportions->control[0] * r.runs[0].proportions->control_size;
    EXPECT_NEAR(a, first, 1e-9);
  }
}

TEST(Reports, EmptyStrategyListGivesHeaders) {
  RunRecord r;
  r.manifest.strategies.clear();
  r.manifest.output_dir = std::filesystem::temp_directory_path() / "np_exp_empty";
  std::filesystem::remove_all(r.manifest.output_dir);
  emit_reports(r);
  EXPECT_EQ(slurp(r.manifest.output_dir / "effects_summary.csv"), "strategy,effect,mean,iqr\n");
  EXPECT_EQ(slurp(r.manifest.output_dir / "parameters.csv"),
            "replication,strategy,parameter,estimate,se,t_ratio,fixed,converged\n");
}

TEST(Reports, SummaryRowShape) {
  RunRecord r;
  r.manifest.output_dir = std::filesystem::temp_directory_path() / "np_exp_row";
  r.summary.rows.push_back({"independent", EffectKind::Direct, 0.267, 0.062, 50});
  emit_reports(r);
  EXPECT_EQ(slurp(r.manifest.output_dir / "effects_summary.csv"),
            "strategy,effect,mean,iqr\nindependent,direct,0.267,0.062\n");
}
