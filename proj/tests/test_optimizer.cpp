// SPDX-License-Identifier: Apache-2.0

#include <cogfb/optimizer.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace {

using cogfb::OptMethod;
using cogfb::OptResult;
using cogfb::optimize_exhaustive;
using cogfb::optimize_relaxed;
using cogfb::RegimeThresholds;
using cogfb::select_asymptotic_regime;
using cogfb::SystemConfig;

SystemConfig at_iaic_db(double db, double alpha = 0.01, int c_bits = 2,
                        double mu = 0.1) {
  SystemConfig cfg;
  cfg.alpha = alpha;
  cfg.c_bits = c_bits;
  cfg.mu = mu;
  cfg.i_aic = std::pow(10.0, db / 10.0);
  return cfg;
}

TEST(Optimizer, ExhaustiveReturnsTheGridArgmax) {
  for (double db : {-20.0, -10.0, 0.0}) {
    for (double alpha : {0.01, 0.1}) {
      SystemConfig cfg = at_iaic_db(db, alpha);
      OptResult res = optimize_exhaustive(cfg);
      EXPECT_EQ(res.method, OptMethod::exhaustive);
      EXPECT_DOUBLE_EQ(res.utility, res.grid.at(res.mode, res.b_bits));
      for (int m = 2; m <= cfg.n_t - 1; ++m)
        for (int b = 0; b <= cfg.b_max; ++b)
          EXPECT_LE(res.grid.at(m, b), res.utility)
              << "db=" << db << " alpha=" << alpha;
      EXPECT_DOUBLE_EQ(res.utility, cogfb::utility(res.mode, res.b_bits, cfg));
    }
  }
}

TEST(Optimizer, ExhaustiveCoversDegenerateBoxes) {
  SystemConfig cfg;
  cfg.b_max = 0;
  OptResult res = optimize_exhaustive(cfg);
  EXPECT_EQ(res.b_bits, 0);

  SystemConfig narrow;
  narrow.n_t = 3;
  OptResult single = optimize_exhaustive(narrow);
  EXPECT_EQ(single.mode, 2);
}

TEST(Optimizer, NegativeUtilityFlagStaysFalseWhenRatePositive) {
  // B = 0 costs nothing, so the best utility is a positive rate even at
  // an extreme price.
  SystemConfig cfg;
  cfg.mu = 100.0;
  OptResult res = optimize_exhaustive(cfg);
  EXPECT_EQ(res.b_bits, 0);
  EXPECT_FALSE(res.negative_utility);
  EXPECT_GT(res.utility, 0.0);
}

TEST(Optimizer, FreeFeedbackNeverHurts) {
  // With mu = 0, enlarging the purchasable range cannot lower the optimum.
  double prev = -1.0;
  for (int b0 : {0, 1, 2, 4, 6}) {
    SystemConfig cfg;
    cfg.mu = 0.0;
    cfg.b_max = b0;
    double best = optimize_exhaustive(cfg).utility;
    EXPECT_GE(best, prev) << "B0=" << b0;
    prev = best;
  }
}

TEST(Optimizer, RelaxedNeverBeatsExhaustiveAndAgreesOnPaperScenarios) {
  std::vector<SystemConfig> scenarios;
  for (double db : {-20.0, -15.0, -10.0, -5.0, 0.0}) {
    scenarios.push_back(at_iaic_db(db, 0.01, 2, 0.1));
    scenarios.push_back(at_iaic_db(db, 0.1, 2, 0.1));
    scenarios.push_back(at_iaic_db(db, 0.01, 6, 0.1));
    scenarios.push_back(at_iaic_db(db, 0.01, 5, 0.15));
  }
  for (const SystemConfig& cfg : scenarios) {
    OptResult exh = optimize_exhaustive(cfg);
    OptResult rel = optimize_relaxed(cfg);
    EXPECT_EQ(rel.method, OptMethod::relaxed);
    EXPECT_FALSE(rel.fallback_warning);
    EXPECT_LE(rel.utility, exh.utility + 1e-12);
    EXPECT_EQ(rel.mode, exh.mode) << "i_aic=" << cfg.i_aic << " C="
                                  << cfg.c_bits << " mu=" << cfg.mu;
    EXPECT_EQ(rel.b_bits, exh.b_bits) << "i_aic=" << cfg.i_aic << " C="
                                      << cfg.c_bits << " mu=" << cfg.mu;
  }
}

TEST(Optimizer, RelaxedHandlesTheBasinSplitScenario) {
  // C = 6, I_AIC = -10 dB: the continuous surface has two basins and the
  // global one rounds to (2, 4); a climb that lands in the (4, B) basin
  // must not win.
  SystemConfig cfg = at_iaic_db(-10.0, 0.01, 6, 0.1);
  OptResult rel = optimize_relaxed(cfg);
  EXPECT_EQ(rel.mode, 2);
  EXPECT_EQ(rel.b_bits, 4);
}

TEST(Optimizer, RelaxedReportsGridConsistentUtility) {
  SystemConfig cfg = at_iaic_db(-10.0);
  OptResult rel = optimize_relaxed(cfg);
  EXPECT_DOUBLE_EQ(rel.utility, rel.grid.at(rel.mode, rel.b_bits));
}

TEST(Optimizer, DelayedFlagChangesTheSurface) {
  SystemConfig cfg = at_iaic_db(-5.0, 0.01, 5, 0.1);
  cfg.rho = 0.5;
  OptResult plain = optimize_exhaustive(cfg, false);
  OptResult delayed = optimize_exhaustive(cfg, true);
  // rho = 0.5 with mu = 0.1 drives the purchased bits to zero.
  EXPECT_EQ(delayed.b_bits, 0);
  EXPECT_NE(plain.utility, delayed.utility);
}

TEST(Optimizer, AsymptoticRegimeSelection) {
  // Interference-limited: eta = 1000.
  SystemConfig high;
  high.alpha = 0.1;
  high.i_aic = 1.25e-4;
  auto pick_high = select_asymptotic_regime(high);
  ASSERT_TRUE(pick_high.has_value());
  EXPECT_EQ(pick_high->first, 4);
  EXPECT_EQ(pick_high->second, 0);

  // Effectively perfect user CSI: C = 40.
  SystemConfig large_c;
  large_c.alpha = 0.1;
  large_c.i_aic = 0.01;
  large_c.c_bits = 40;
  auto pick_c = select_asymptotic_regime(large_c);
  ASSERT_TRUE(pick_c.has_value());
  EXPECT_EQ(pick_c->first, 4);
  EXPECT_EQ(pick_c->second, 0);

  // Noise-limited: eta = 0.001 -> B = 0 and the one-dimensional search.
  SystemConfig low;
  low.i_aic = 12.5;
  ASSERT_DOUBLE_EQ(low.eta(), 0.001);
  auto pick_low = select_asymptotic_regime(low);
  ASSERT_TRUE(pick_low.has_value());
  EXPECT_EQ(pick_low->second, 0);
  EXPECT_EQ(pick_low->first, 2);

  // Middle regime: no shortcut.
  EXPECT_FALSE(select_asymptotic_regime(SystemConfig{}).has_value());

  // Thresholds are configuration, not constants.
  RegimeThresholds loose;
  loose.eta_high = 0.1;  // default config has eta = 0.125
  auto forced = select_asymptotic_regime(SystemConfig{}, loose);
  ASSERT_TRUE(forced.has_value());
  EXPECT_EQ(forced->first, 4);
}

TEST(Optimizer, AsymptoticShortcutAgreesWithExhaustiveOutsideTheMiddle) {
  // eta above 1e3 or below 1e-3 via the i_aic sweep at n_t=5, C=2.
  for (double i_aic : {1.25e-6, 1.25e-5, 12.5, 125.0}) {
    SystemConfig cfg;
    cfg.i_aic = i_aic;
    auto pick = select_asymptotic_regime(cfg);
    ASSERT_TRUE(pick.has_value()) << "i_aic=" << i_aic;
    OptResult exh = optimize_exhaustive(cfg);
    EXPECT_EQ(pick->first, exh.mode) << "i_aic=" << i_aic;
    EXPECT_EQ(pick->second, exh.b_bits) << "i_aic=" << i_aic;
  }
}

}  // namespace
