// Copyright 2026 The Acquihire Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "acquihire/equilibrium.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace acquihire {
namespace {

using testing::Figure1Profile;
using testing::Figure1Surplus;
using testing::Q;

Rational Sum(const std::map<std::string, Rational>& dist) {
  Rational total = 0;
  for (const auto& [label, p] : dist) total += p;
  return total;
}

TEST(LambdaA, FigureOne) {
  Threshold t = lambda_A(Figure1Profile());
  ASSERT_TRUE(t.value);
  EXPECT_EQ(*t.value, Q(17, 48));
  EXPECT_EQ(t.verdict, ThresholdVerdict::kInterior);
  EXPECT_NEAR(ToDouble(*t.value), 0.354167, 1e-5);
}

TEST(LambdaA, NumeratorVanishesNearBoundary) {
  ProfitProfile p = Figure1Profile();
  p.pi_bar_L = p.pi_F + p.pi_E - Q(1, 1000000);
  Threshold t = lambda_A(p);
  EXPECT_LT(*t.value, Q(1, 100000));
  EXPECT_GT(*t.value, 0);
}

TEST(LambdaA, AboveOneMeansNever) {
  ProfitProfile p = Figure1Profile();
  p.pi_E = Q(13, 10);  // exceeds pi_bar_L - pi_under_H = 56/45
  Threshold t = lambda_A(p);
  EXPECT_GT(*t.value, 1);
  EXPECT_EQ(t.verdict, ThresholdVerdict::kNever);
  EXPECT_FALSE(t.Admits(Q(99, 100)));
}

TEST(LambdaA, A1FailureIsValidationError) {
  ProfitProfile p = Figure1Profile();
  p.pi_under_H = p.pi_under_L;
  EXPECT_THROW(lambda_A(p), ValidationError);
}

TEST(SolveBaseline, BelowThreshold) {
  EquilibriumReport r = solve_baseline(Figure1Profile(), Q(3, 10));
  EXPECT_EQ(r.Entry(1, MatchType::kLow).action, Action::kNothing);
  EXPECT_EQ(r.Entry(1, MatchType::kHigh).action, Action::kAcquihire);
  EXPECT_EQ(r.Entry(2, MatchType::kHigh).action, Action::kAcquihire);
  EXPECT_EQ(r.Entry(2, MatchType::kLow).action, Action::kNothing);
  EXPECT_EQ(r.bid, Q(9, 10));
  EXPECT_EQ(1 - r.outcome_distribution.at(kOutcomeNone), Q(51, 100));
  EXPECT_EQ(Sum(r.outcome_distribution), 1);
}

TEST(SolveBaseline, AtThresholdAcquires) {
  EquilibriumReport r = solve_baseline(Figure1Profile(), Q(17, 48));
  EXPECT_EQ(r.Entry(1, MatchType::kLow).action, Action::kAcquihire);
  EXPECT_EQ(r.outcome_distribution.at(kOutcomeNone), 0);
  EXPECT_EQ(Sum(r.outcome_distribution), 1);
}

TEST(SolveBaseline, RejectsLambdaOutsideUnitInterval) {
  EXPECT_THROW(solve_baseline(Figure1Profile(), Q(0)), ValidationError);
  EXPECT_THROW(solve_baseline(Figure1Profile(), Q(1)), ValidationError);
}

TEST(SolveBaseline, NearMaximalLowProfitAcquiresAtHighLambda) {
  ProfitProfile p = Figure1Profile();
  p.pi_bar_L = p.pi_F + p.pi_E - Q(1, 1000);
  EquilibriumReport r = solve_baseline(p, Q(999, 1000));
  EXPECT_EQ(r.Entry(1, MatchType::kLow).action, Action::kAcquihire);
}

TEST(LambdaCS, FigureOnePanels) {
  EXPECT_EQ(*lambda_CS(Figure1Surplus(Q(2, 5))).value, Q(7, 31));
  EXPECT_EQ(*lambda_CS(Figure1Surplus(Q(1, 2))).value, Q(16, 31));
  EXPECT_NEAR(ToDouble(*lambda_CS(Figure1Surplus(Q(2, 5))).value), 0.225806,
              1e-5);
  EXPECT_NEAR(ToDouble(*lambda_CS(Figure1Surplus(Q(1, 2))).value), 0.516129,
              1e-5);
  SurplusProfile s = Figure1Surplus(Q(29, 90));  // cs_L - cs_F
  EXPECT_EQ(*lambda_CS(s).value, 0);
}

TEST(LambdaCS, DegenerateWhenHighEqualsLow) {
  SurplusProfile s{Q(2), Q(0), Q(3), Q(3)};
  Threshold t = lambda_CS(s);
  EXPECT_FALSE(t.value);
  EXPECT_FALSE(t.diagnostic.empty());
  EXPECT_EQ(cs_regime(Figure1Profile(), s, Q(1, 2)).regime,
            CsRegime::kAllBenefit);
}

TEST(CsRegime, HarmfulBetweenThresholds) {
  CsRegimeResult r =
      cs_regime(Figure1Profile(), Figure1Surplus(Q(1, 2)), Q(45, 100));
  EXPECT_EQ(r.regime, CsRegime::kHarmIffBetween);
  EXPECT_TRUE(r.harmful);
  EXPECT_EQ(r.cs_allowed, Q(2655, 1000));
  EXPECT_EQ(r.cs_banned, Q(241, 90));
  EXPECT_NEAR(ToDouble(r.cs_banned), 2.67778, 1e-5);
}

TEST(CsRegime, BelowLambdaAUsesHighOnlyMixture) {
  CsRegimeResult r =
      cs_regime(Figure1Profile(), Figure1Surplus(Q(2, 5)), Q(3, 10));
  const Rational none = Q(49, 100);
  EXPECT_EQ(r.cs_allowed, none * Q(232, 90) + (1 - none) * Q(256, 90));
  EXPECT_NEAR(ToDouble(r.cs_allowed), 2.71378, 1e-5);
  EXPECT_FALSE(r.harmful);
}

TEST(CsRegime, ExtremeStartupSurplus) {
  EXPECT_EQ(cs_regime(Figure1Profile(), Figure1Surplus(Q(100)), Q(1, 2)).regime,
            CsRegime::kAllHarm);
  for (int k = 1; k < 10; ++k) {
    CsRegimeResult r =
        cs_regime(Figure1Profile(), Figure1Surplus(Q(100)), Q(k, 10));
    EXPECT_TRUE(r.harmful);
  }
  CsRegimeResult zero =
      cs_regime(Figure1Profile(), Figure1Surplus(Q(0)), Q(1, 2));
  EXPECT_EQ(zero.regime, CsRegime::kAllBenefit);
  EXPECT_FALSE(zero.harmful);
}

TEST(CsRegime, HarmfulFlagMatchesComparison) {
  testing::RationalGen gen(21);
  for (int i = 0; i < 200; ++i) {
    ProfitProfile p = testing::RandomA1Profile(gen);
    SurplusProfile s;
    s.cs_F = gen.Between(Q(1), Q(5));
    s.cs_L = s.cs_F + gen.Between(Q(0), Q(2));
    s.cs_H = s.cs_L + gen.Between(Q(0), Q(2));
    s.cs_E = gen.Between(Q(0), Q(3));
    for (int k = 1; k < 20; ++k) {
      CsRegimeResult r = cs_regime(p, s, Q(k, 20));
      EXPECT_EQ(r.harmful, r.cs_allowed < r.cs_banned);
    }
  }
}

TEST(TotalSurplus, Definitions) {
  ProfitProfile p = Figure1Profile();
  SurplusProfile s = Figure1Surplus(Q(2, 5));
  EXPECT_EQ(expected_total_surplus(p, s, Q(1, 2), Policy::kBan),
            2 * p.pi_F + p.pi_E + s.cs_F + s.cs_E);
  const Rational lam = Q(1, 2);
  EXPECT_EQ(expected_total_surplus(p, s, lam, Policy::kAllow),
            lam * (p.pi_bar_H + p.pi_under_H + s.cs_H) +
                (1 - lam) * (p.pi_bar_L + p.pi_under_L + s.cs_L));
  EXPECT_LT(p.pi_bar_L + p.pi_under_L + s.cs_L,
            p.pi_bar_H + p.pi_under_H + s.cs_H);
}

TEST(LambdaATau, ZeroShareIsBaseline) {
  GainProfile g = ToGains(Figure1Profile(), Q(0));
  EXPECT_EQ(*lambda_A_tau(g).threshold.value, Q(17, 48));
  EXPECT_EQ(lambda_A_tau(g).sale_price, 0);
}

TEST(LambdaATau, FullShare) {
  GainProfile g = ToGains(Figure1Profile(), Q(1));
  TechThreshold t = lambda_A_tau(g);
  EXPECT_EQ(*t.threshold.value, Q(17, 77));
  EXPECT_NEAR(ToDouble(*t.threshold.value), 0.220779, 1e-6);
  // Low seller, High buyer: half of g_bar_H + g_under_L + g_bar_L + g_under_H.
  EXPECT_EQ(t.sale_price, Q(141, 90));
  EXPECT_EQ(TechSalePrice(g, MatchType::kLow, MatchType::kHigh), t.sale_price);
  EXPECT_GT(TechSaleSurplus(g, MatchType::kLow, MatchType::kHigh), 0);
}

TEST(LambdaATau, StrictlyDecreasingInShare) {
  testing::RationalGen gen(8);
  for (int i = 0; i < 50; ++i) {
    GainProfile g = ToGains(testing::RandomA1Profile(gen), Q(0));
    if (!validate_gains(g).ok()) continue;
    Rational prev = *lambda_A_tau(g).threshold.value;
    for (int k = 1; k <= 40; ++k) {
      g.tau = Q(k, 40);
      Rational cur = *lambda_A_tau(g).threshold.value;
      EXPECT_LT(cur, prev);
      prev = cur;
    }
  }
}

TEST(SolveTech, AboveAndBelowThreshold) {
  GainProfile g = ToGains(Figure1Profile(), Q(1));
  EquilibriumReport above = solve_tech(g, Q(1, 4));
  EXPECT_EQ(above.Entry(1, MatchType::kLow).action, Action::kSellTech);
  EXPECT_TRUE(above.Entry(1, MatchType::kLow).sells_to_high_only);
  EXPECT_EQ(above.Entry(1, MatchType::kHigh).action, Action::kAcquihire);
  EXPECT_EQ(above.outcome_distribution.at(kOutcomeFirm1LowSells),
            Q(3, 4) * Q(1, 4));
  EXPECT_EQ(Sum(above.outcome_distribution), 1);

  EquilibriumReport below = solve_tech(g, Q(1, 5));
  EXPECT_EQ(below.Entry(1, MatchType::kLow).action, Action::kNothing);
  EXPECT_EQ(below.Entry(2, MatchType::kHigh).action, Action::kAcquihire);
  EXPECT_EQ(below.Entry(2, MatchType::kLow).action, Action::kNothing);
  EXPECT_EQ(Sum(below.outcome_distribution), 1);
}

TEST(SolveTech, SameTypesDoNotTrade) {
  GainProfile g = ToGains(Figure1Profile(), Q(1));
  EXPECT_EQ(TechSaleSurplus(g, MatchType::kLow, MatchType::kLow), 0);
  EXPECT_EQ(TechSaleSurplus(g, MatchType::kHigh, MatchType::kHigh), 0);
  EXPECT_LT(TechSaleSurplus(g, MatchType::kHigh, MatchType::kLow), 0);
}

TEST(Dominant, SymmetricPairEqualThresholds) {
  DominantThresholds d =
      dominant_thresholds({Figure1Profile(), Figure1Profile()});
  EXPECT_EQ(*d.lambda_D.value, *d.lambda_C.value);
  EXPECT_FALSE(d.challenger_higher);
}

TEST(Dominant, ProportionalExample) {
  ProportionalSpec spec{Q(2),     Q(1),     Q(3, 2), Q(6, 5),
                        Q(9, 10), Q(1, 2), Q(9, 20)};
  DominantPair pair = proportional_pair(spec);
  DominantThresholds d = dominant_thresholds(pair);
  EXPECT_EQ(*d.lambda_D.value, Q(1, 20));
  EXPECT_EQ(*d.lambda_C.value, Q(1, 2));
  EXPECT_TRUE(d.sufficient);
  EXPECT_TRUE(d.challenger_higher);
}

TEST(Dominant, EqualBaseProfitsEqualThresholds) {
  ProportionalSpec spec{Q(1),     Q(1),     Q(3, 2), Q(6, 5),
                        Q(9, 10), Q(1, 2), Q(3, 10)};
  DominantThresholds d = dominant_thresholds(proportional_pair(spec));
  EXPECT_EQ(*d.lambda_D.value, *d.lambda_C.value);
}

TEST(Dominant, A1FailureNamesSide) {
  // mult_L * pi_D = 2.4 >= pi_D + pi_E = 2.3.
  ProportionalSpec spec{Q(2),     Q(1),     Q(3, 2), Q(6, 5),
                        Q(9, 10), Q(1, 2), Q(3, 10)};
  try {
    proportional_pair(spec);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "dominant");
  }
}

TEST(Dominant, ViolatedSufficientConditionStillComputes) {
  ProfitProfile d = Figure1Profile();
  ProfitProfile c = Figure1Profile();
  c.pi_under_H = Q(1, 10);  // challenger loses more from a High rival
  DominantThresholds t = dominant_thresholds({d, c});
  EXPECT_FALSE(t.loss_condition);
  EXPECT_FALSE(t.sufficient);
  EXPECT_TRUE(t.lambda_C.value.has_value());
}

TEST(Dominant, ProportionalPairsFavorDominant) {
  testing::RationalGen gen(13);
  int checked = 0;
  while (checked < 100) {
    ProportionalSpec s;
    s.mult_L = 1 + gen.Inside(Q(0), Q(1));
    s.mult_H = s.mult_L + gen.Inside(Q(0), Q(1));
    s.mult_l = gen.Inside(Q(0), Q(1));
    s.mult_h = gen.Between(Q(0), s.mult_l) * Q(63, 64);
    s.pi_C = gen.Between(Q(1), Q(5));
    s.pi_D = s.pi_C + gen.Inside(Q(0), Q(1));
    const Rational lo = (s.mult_L - 1) * s.pi_D;
    const Rational hi = (s.mult_H - 1) * s.pi_C;
    if (!(lo < hi)) continue;
    s.pi_E = (lo + hi) / 2;
    DominantThresholds d = dominant_thresholds(proportional_pair(s));
    EXPECT_TRUE(d.challenger_higher);
    ++checked;
  }
}

TEST(NFirm, TwoFirmCondition) {
  CournotParams p{Q(10), Q(1), Q(3), Q(2), Q(0), 2};
  NFirmCondition c =
      nfirm_hoarding_condition(2, nfirm_profit_profile(p, Q(537, 1000)),
                               Q(1, 10));
  EXPECT_EQ(c.rhs, Q(4, 15));
  EXPECT_NEAR(ToDouble(c.rhs), 0.26667, 1e-5);
  EXPECT_EQ(c.verdict(), "violated");
}

TEST(NFirm, ThreeFirmCondition) {
  CournotParams p{Q(10), Q(1), Q(3), Q(2), Q(0), 3};
  NFirmCondition c =
      nfirm_hoarding_condition(3, nfirm_profit_profile(p, Q(537, 1000)),
                               Q(1, 10));
  EXPECT_EQ(c.rhs, Q(285, 1000));
  EXPECT_EQ(c.lhs, Q(537, 1000));
  EXPECT_EQ(c.verdict(), "violated");
}

TEST(NFirm, ManyFirmsNoHoarding) {
  CournotParams p{Q(10), Q(1), Q(3), Q(2), Q(0), 100};
  NFirmCondition c = nfirm_hoarding_condition(
      100, nfirm_profit_profile(p, Q(537, 1000)), Q(1, 10));
  EXPECT_FALSE(c.hoarding);
  std::optional<int> onset =
      nfirm_no_hoarding_onset(p, Q(537, 1000), Q(1, 10), 200);
  ASSERT_TRUE(onset);
  EXPECT_LE(*onset, 200);
}

TEST(NFirm, RejectsSingleFirm) {
  EXPECT_THROW(nfirm_hoarding_condition(1, Figure1Profile(), Q(1, 2)),
               ValidationError);
}

TEST(LambdaPrime, FigureOne) {
  Threshold t = lambda_prime(Figure1Profile());
  EXPECT_EQ(*t.value, Q(-9, 22));
  EXPECT_EQ(t.verdict, ThresholdVerdict::kAlways);
  EXPECT_TRUE(t.Admits(Q(1, 100)));
}

TEST(LambdaPrime, Boundaries) {
  ProfitProfile p = Figure1Profile();
  p.pi_under_L = p.pi_bar_L - p.pi_E;  // 0.9 keeps A1(ii)
  ASSERT_LT(p.pi_under_L, p.pi_F);
  EXPECT_EQ(*lambda_prime(p).value, 0);
}

TEST(LambdaAS, ZeroShareIsBaseline) {
  SurplusShareResult r = lambda_AS(Figure1Profile(), Q(0));
  EXPECT_EQ(*r.threshold.value, Q(17, 48));
  EXPECT_TRUE(r.feasible);
}

TEST(LambdaAS, FullShareInfeasible) {
  SurplusShareResult r = lambda_AS(Figure1Profile(), Q(1));
  EXPECT_EQ(r.feasibility_bound, Q(31, 63));
  EXPECT_NEAR(ToDouble(r.feasibility_bound), 0.492, 1e-3);
  EXPECT_FALSE(r.feasible);
}

TEST(LambdaAS, WeaklyIncreasingInShare) {
  testing::RationalGen gen(17);
  for (int i = 0; i < 100; ++i) {
    ProfitProfile p = testing::RandomA1Profile(gen);
    std::optional<Rational> prev;
    for (int k = 0; k <= 20; ++k) {
      SurplusShareResult r = lambda_AS(p, Q(k, 20));
      if (!r.threshold.value) break;
      if (prev) EXPECT_GE(*r.threshold.value, *prev);
      prev = r.threshold.value;
    }
  }
}

TEST(Properties, LambdaAMonotone) {
  testing::RationalGen gen(19);
  for (int i = 0; i < 200; ++i) {
    ProfitProfile p = testing::RandomA1Profile(gen);
    const Rational base = *lambda_A(p).value;
    ProfitProfile more_e = p;
    more_e.pi_E += Q(1, 1000);
    if (validate_baseline(more_e).ok()) {
      EXPECT_GT(*lambda_A(more_e).value, base);
    }
    ProfitProfile more_l = p;
    more_l.pi_bar_L += Q(1, 1000);
    if (validate_baseline(more_l).ok()) {
      EXPECT_LT(*lambda_A(more_l).value, base);
    }
  }
}

TEST(Properties, BaselineDistributionAndMeasurability) {
  testing::RationalGen gen(23);
  for (int i = 0; i < 200; ++i) {
    ProfitProfile p = testing::RandomA1Profile(gen);
    for (int k = 1; k < 10; ++k) {
      EquilibriumReport r = solve_baseline(p, Q(k, 10));
      EXPECT_EQ(Sum(r.outcome_distribution), 1);
      EXPECT_EQ(r.strategy.size(), 4u);
      EXPECT_EQ(r.bid, p.pi_E);
    }
  }
}

}  // namespace
}  // namespace acquihire
