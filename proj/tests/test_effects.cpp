#include <gtest/gtest.h>

#include "netpolicy/effects.hpp"
#include "netpolicy/errors.hpp"
#include "netpolicy/stats.hpp"
#include "support.hpp"

using namespace netpolicy;

namespace {

NetworkState with_behavior(std::vector<int> b) {
  const int n = static_cast<int>(b.size());
  return {Graph(n), std::move(b), std::vector<double>(n, 1.0)};
}

NodeSet members(std::vector<NodeId> v) {
  NodeSet s;
  s.members = std::move(v);
  return s;
}

}  // namespace

TEST(Proportions, AllAdopt) {
  const NetworkState s = with_behavior({1, 1, 1, 1});
  const PeriodProportions p = period_proportions({s, s, s}, {"A", "B", "C"}, members({0}));
  for (double v : p.treat) EXPECT_DOUBLE_EQ(v, 1.0);
  for (double v : p.control) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Proportions, SingleTreatedAdopter) {
  const NetworkState s = with_behavior({0, 1, 0, 0});
  const PeriodProportions p = period_proportions({s}, {"A"}, members({1}));
  EXPECT_DOUBLE_EQ(p.treat[0], 1.0);
  EXPECT_DOUBLE_EQ(p.control[0], 0.0);
  EXPECT_DOUBLE_EQ(p.gap("A"), -1.0);
}

TEST(Proportions, RejectsEmptyOrFull) {
  const NetworkState s = with_behavior({0, 1, 0});
  EXPECT_THROW(period_proportions({s}, {"A"}, members({})), InvalidInput);
  EXPECT_THROW(period_proportions({s}, {"A"}, members({0, 1, 2})), InvalidInput);
}

TEST(Effects, Identities) {
  const NetworkState s = with_behavior({0, 1, 0, 1});
  const PeriodProportions same = period_proportions({s, s, s}, {"A", "B", "C"}, members({0, 1}));
  const EffectEstimates e = second_order_difference(same);
  EXPECT_DOUBLE_EQ(e.direct, 0.0);
  EXPECT_DOUBLE_EQ(e.short_term, 0.0);
  EXPECT_FALSE(e.long_term.has_value());

  PeriodProportions p;
  p.labels = {"A", "B", "C", "D"};
  p.treat = {0.5, 0.25, 0.3, 0.1};
  p.control = {0.5, 0.5, 0.5, 0.5};
  const EffectEstimates f = second_order_difference(p);
  EXPECT_DOUBLE_EQ(f.direct, 0.25);
  EXPECT_DOUBLE_EQ(f.short_term, 0.2);
  EXPECT_DOUBLE_EQ(*f.long_term, 0.4);
  p.labels = {"A", "B", "X", "D"};
  EXPECT_THROW(second_order_difference(p), InvalidInput);
}

TEST(Effects, BoundedProperty) {
  Rng rng = make_rng(3);
  for (int t = 0; t < 500; ++t) {
    std::vector<NetworkState> waves;
    for (int w = 0; w < 4; ++w) {
      std::vector<int> b(12);
      for (int& v : b) v = uniform01(rng) < 0.5;
      waves.push_back(with_behavior(b));
    }
    const EffectEstimates e =
        second_order_difference(period_proportions(waves, {"A", "B", "C", "D"}, members({0, 3, 7})));
    for (double v : {e.direct, e.short_term, *e.long_term}) {
      EXPECT_GE(v, -2.0);
      EXPECT_LE(v, 2.0);
    }
  }
}

TEST(MannWhitney, Examples) {
  const std::vector<double> x{1, 2}, y{3, 4};
  EXPECT_NEAR(mann_whitney_exact_p(x, y), 2.0 / 6.0, 1e-15);
  const MannWhitneyResult r = mann_whitney_u(x, y);
  EXPECT_TRUE(r.exact);
  EXPECT_DOUBLE_EQ(r.u, 0.0);
  EXPECT_NEAR(mann_whitney_u({1, 2, 3}, {1, 2, 3}).p_two_sided, 1.0, 1e-12);
  EXPECT_THROW(mann_whitney_u({}, {1}), InvalidInput);
}

TEST(MannWhitney, ExactMatchesPairwiseEnumeration) {
  Rng rng = make_rng(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t nx = 1 + uniform_index(rng, 6), ny = 1 + uniform_index(rng, 6);
    std::vector<double> x(nx), y(ny);
    for (double& v : x) v = static_cast<double>(uniform_index(rng, 5));
    for (double& v : y) v = static_cast<double>(uniform_index(rng, 5));
    EXPECT_NEAR(mann_whitney_exact_p(x, y), oracle::mann_whitney_p(x, y), 1e-12);
  }
}

TEST(MannWhitney, NormalForLargeSamples) {
  Rng rng = make_rng(5);
  std::vector<double> x(40), y(40);
  for (double& v : x) v = uniform01(rng);
  for (double& v : y) v = uniform01(rng) + 0.3;
  const MannWhitneyResult r = mann_whitney_u(x, y);
  EXPECT_FALSE(r.exact);
  EXPECT_LT(r.p_two_sided, 0.01);
  EXPECT_DOUBLE_EQ(r.p_two_sided, mann_whitney_normal_p(x, y));
}

TEST(MannWhitney, NormalApproachesExact) {
  // Twelve against twelve without ties: the approximation is close.
  std::vector<double> x, y;
  for (int k = 0; k < 12; ++k) {
    x.push_back(2 * k + (k % 3 == 0 ? 1.5 : 0.0));
    y.push_back(2 * k + 1);
  }
  EXPECT_NEAR(mann_whitney_normal_p(x, y), mann_whitney_exact_p(x, y), 0.02);
}

TEST(Summary, MeansAndIqr) {
  const std::vector<EffectEstimates> flat(5, EffectEstimates{0.1, 0.2, 0.3});
  const std::vector<EffectEstimates> two{{0.2, 0.0, std::nullopt}, {0.3, 0.0, std::nullopt}};
  const RunSummary s = summarize_runs({{"a", flat}, {"b", two}});
  ASSERT_EQ(s.rows.size(), 4u);  // no long-term: b lacks it
  EXPECT_DOUBLE_EQ(s.rows[0].iqr, 0.0);
  EXPECT_NEAR(s.rows[1].mean, 0.25, 1e-15);
  EXPECT_EQ(s.tests.size(), 2u);
  EXPECT_THROW(summarize_runs({{"a", flat}, {"b", {two[0]}}}), InvalidInput);
}

TEST(Stats, Quantiles) {
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.75), 3.25);
  EXPECT_DOUBLE_EQ(quantile({5}, 0.3), 5.0);
  EXPECT_THROW(quantile({}, 0.5), InvalidInput);
  const std::vector<double> v{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(mean_sd(v).mean, 2.5);
  EXPECT_NEAR(mean_sd(v).sd, std::sqrt(5.0 / 3.0), 1e-15);
}
