#include <gtest/gtest.h>

#include "netpolicy/errors.hpp"
#include "netpolicy/saom.hpp"
#include "support.hpp"

using namespace netpolicy;

namespace {

EstimationSettings quick(std::uint64_t seed) {
  EstimationSettings s;
  s.phase1_sims = 20;
  s.subphase_iterations = {40, 80};
  s.phase3_sims = 200;
  s.phase3_derivative_sims = 100;
  s.max_retries = 1;
  s.seed = seed;
  return s;
}

Panel simulated_panel(int n, std::uint64_t seed, bool freeze_behavior_first) {
  Rng rng = make_rng(seed);
  NetworkState s{oracle::random_graph(n, 0.08, rng), std::vector<int>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    s.behavior[i] = uniform01(rng) < 0.4;
    s.price[i] = 50.0 + 25.0 * uniform01(rng);
  }
  EffectSpec spec;
  SaomModel m{spec, scales_from_state(s)};
  ParameterVector p = ParameterVector::zeros(spec, 2, 3.0, 1.5);
  p.beta_net = {-1.5, 0.4, 0.8, 0.5};
  p.beta_beh = {-0.3, 0.05, 1.0};
  if (freeze_behavior_first) p.rho_beh[0] = 0.0;
  Panel panel;
  panel.labels = {"A", "B", "C"};
  panel.waves.push_back(s);
  for (int period = 0; period < 2; ++period) {
    NetworkState next = simulate_period(m, p, panel.waves.back(), period, rng()).state;
    panel.waves.push_back(next);
  }
  return panel;
}

}  // namespace

TEST(Estimate, TableLayout) {
  const Panel panel = simulated_panel(30, 1, false);
  const EstimationResult r = estimate_mom(panel, EffectSpec{}, quick(3));
  const std::vector<std::string> names = parameter_names(EffectSpec{}, 2);
  ASSERT_EQ(r.table.size(), names.size());
  for (std::size_t k = 0; k < names.size(); ++k) EXPECT_EQ(r.table[k].name, names[k]);
  EXPECT_EQ(r.free_names.size(), r.standard_errors.size());
  EXPECT_EQ(r.free_names.size(), r.t_ratios.size());
  for (const ParameterRow& row : r.table) {
    EXPECT_TRUE(std::isfinite(row.estimate));
    EXPECT_EQ(row.fixed, !row.standard_error.has_value());
  }
  EXPECT_GE(r.attempts, 1);
  if (r.converged) {
    EXPECT_LT(r.max_convergence_ratio, 0.25);
    for (double t : r.t_ratios) EXPECT_LT(std::abs(t), 0.1);
  }
}

TEST(Estimate, Deterministic) {
  const Panel panel = simulated_panel(25, 2, false);
  const EstimationResult a = estimate_mom(panel, EffectSpec{}, quick(5));
  const EstimationResult b = estimate_mom(panel, EffectSpec{}, quick(5));
  ASSERT_EQ(a.table.size(), b.table.size());
  for (std::size_t k = 0; k < a.table.size(); ++k) EXPECT_EQ(a.table[k].estimate, b.table[k].estimate);
  EstimationSettings threaded = quick(5);
  threaded.threads = 3;
  const EstimationResult c = estimate_mom(panel, EffectSpec{}, threaded);
  for (std::size_t k = 0; k < a.table.size(); ++k) EXPECT_EQ(a.table[k].estimate, c.table[k].estimate);
}

TEST(Estimate, UnchangedPeriodRateIsFixed) {
  const Panel panel = simulated_panel(30, 3, true);
  ASSERT_EQ(panel.waves[0].behavior, panel.waves[1].behavior);
  const EstimationResult r = estimate_mom(panel, EffectSpec{}, quick(1));
  const auto row = std::find_if(r.table.begin(), r.table.end(),
                                [](const ParameterRow& x) { return x.name == "rate_behavior_period1"; });
  ASSERT_NE(row, r.table.end());
  EXPECT_TRUE(row->fixed);
  EXPECT_DOUBLE_EQ(row->estimate, 0.1);
  EXPECT_FALSE(row->standard_error.has_value());
}

TEST(Estimate, RejectsShortPanel) {
  Panel one = simulated_panel(10, 4, false);
  one.waves.resize(1);
  one.labels.resize(1);
  EXPECT_THROW(estimate_mom(one, EffectSpec{}, quick(1)), InvalidInput);
}

TEST(Predict, EpochsAndConvergenceGuard) {
  const Panel panel = simulated_panel(30, 5, false);
  EstimationResult r = estimate_mom(panel, EffectSpec{}, quick(2));
  r.converged = false;
  EXPECT_THROW(predict_future(panel.waves.back(), r, 1, 1), InvalidInput);
  const auto zero = predict_future(panel.waves.back(), r, 0, 1, true);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0], panel.waves.back());
  const auto two = predict_future(panel.waves.back(), r, 2, 1, true);
  EXPECT_EQ(two.size(), 3u);
}

TEST(Predict, FormationOnlyKeepsTies) {
  const Panel panel = simulated_panel(30, 6, false);
  EstimationResult r = estimate_mom(panel, EffectSpec{}, quick(2));
  // Positive weights only: dropping a tie always lowers utility.
  r.estimates.beta_net = {2.0, 0.5, 0.0, 0.0};
  r.converged = true;
  double growth = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto path = predict_future(panel.waves.back(), r, 1, seed);
    growth += static_cast<double>(path[1].graph.num_edges()) -
              static_cast<double>(path[0].graph.num_edges());
  }
  EXPECT_GT(growth / 50.0, 0.0);
}
