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

#include "acquihire/oracle.hpp"

#include <gtest/gtest.h>

#include "acquihire/cournot.hpp"
#include "test_support.hpp"

namespace acquihire {
namespace {

using testing::Figure1Profile;
using testing::Q;

std::vector<Rational> Grid(int points) {
  std::vector<Rational> out;
  for (int k = 1; k < points; ++k) out.push_back(Q(k, points));
  return out;
}

bool LowActs(const GameSpec& g) {
  const PBEResult r = solve_pbe(g);
  return r.ActionAt(r.FirstPassive(), "f1[theta1=L]") != "Nothing";
}

std::string Join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s + "\n";
  return out;
}

TEST(Baseline, MatchesClosedFormBothSides) {
  const ProfitProfile p = Figure1Profile();
  for (const Rational& lam : {Q(1, 5), Q(17, 48), Q(1, 2), Q(9, 10)}) {
    const GameSpec g = BuildBaselineGame(p, lam);
    const PBEResult r = solve_pbe(g);
    ASSERT_FALSE(r.equilibria.empty());
    EXPECT_TRUE(r.uniqueness_of_firm1_behavior);
    const AgreementReport rep = certify(solve_baseline(p, lam), g, r);
    EXPECT_TRUE(rep.agree) << FormatSig(lam) << "\n" << Join(rep.diffs);
    EXPECT_TRUE(OneShotDeviationCheck(g, r, r.equilibria[0]));
  }
}

TEST(Baseline, ThresholdOnGrid) {
  const ProfitProfile p = Figure1Profile();
  const AgreementReport rep =
      certify_threshold(lambda_A(p), Grid(48), [&](const Rational& l) {
        return LowActs(BuildBaselineGame(p, l));
      });
  EXPECT_TRUE(rep.agree) << Join(rep.diffs);
}

TEST(Baseline, WithoutEntrepreneurNode) {
  const ProfitProfile p = Figure1Profile();
  for (const Rational& lam : {Q(1, 3), Q(2, 5)}) {
    const GameSpec g = BuildBaselineGame(p, lam, false);
    EXPECT_TRUE(certify(solve_baseline(p, lam), g, solve_pbe(g)).agree);
  }
}

TEST(Baseline, RandomProfiles) {
  testing::RationalGen gen(31);
  for (int i = 0; i < 40; ++i) {
    const ProfitProfile p = testing::RandomA1Profile(gen);
    const Rational lam = gen.Inside(Q(0), Q(1));
    const GameSpec g = BuildBaselineGame(p, lam);
    const AgreementReport rep = certify(solve_baseline(p, lam), g, solve_pbe(g));
    EXPECT_TRUE(rep.agree) << Join(rep.diffs);
  }
}

TEST(Baseline, SingleFirmAlwaysAcquires) {
  // Without a rival, Low firm 1 compares pi_bar_L - pi_E with pi_F.
  const ProfitProfile p = Figure1Profile();
  const GameSpec g = BuildBaselineGame(p, Q(1, 10), true, true);
  const PBEResult r = solve_pbe(g);
  EXPECT_EQ(r.ActionAt(0, "f1[theta1=L]"), "Nothing");
  EXPECT_EQ(r.ActionAt(0, "f1[theta1=H]"), "Acquihire");
  EXPECT_EQ(r.equilibria[0].outcome_distribution.at(kOutcomeFirm1High), Q(1, 10));
}

TEST(Baseline, RivalDecisionIsBeliefIndependent) {
  const GameSpec g = BuildBaselineGame(Figure1Profile(), Q(1, 2));
  const PBEResult r = solve_pbe(g);
  for (const char* name : {"f2[theta2=H]", "f2[theta2=L]"}) {
    const int id = r.InfoSetIndex(name);
    ASSERT_GE(id, 0) << name;
    EXPECT_TRUE(r.equilibria[0].beliefs[id].belief_independent);
  }
}

TEST(Baseline, ExpectedPayoffsMatchOutcomes) {
  const ProfitProfile p = Figure1Profile();
  const Rational lam = Q(1, 2);
  const PBEResult r = solve_pbe(BuildBaselineGame(p, lam));
  // Both firm-1 types acquire: the entrepreneur always earns pi_E.
  EXPECT_EQ(r.equilibria[0].expected_payoffs[2], p.pi_E);
  EXPECT_EQ(r.equilibria[0].expected_payoffs[0],
            lam * p.pi_bar_H + (1 - lam) * p.pi_bar_L - p.pi_E);
}

TEST(Baseline, Deterministic) {
  const GameSpec g = BuildBaselineGame(Figure1Profile(), Q(3, 7));
  const PBEResult a = solve_pbe(g);
  const PBEResult b = solve_pbe(g);
  ASSERT_EQ(a.equilibria.size(), b.equilibria.size());
  for (size_t k = 0; k < a.equilibria.size(); ++k) {
    EXPECT_EQ(a.equilibria[k].strategy, b.equilibria[k].strategy);
    EXPECT_EQ(a.equilibria[k].outcome_distribution,
              b.equilibria[k].outcome_distribution);
  }
  EXPECT_EQ(a.equilibria_found, b.equilibria_found);
}

TEST(Solver, SizeLimits) {
  const GameSpec g = BuildNFirmGame(8, Figure1Profile(), Q(1, 2));
  SolveOptions tight;
  tight.max_terminal_paths = 100;
  EXPECT_THROW(solve_pbe(g, tight), OracleSizeError);
  SolveOptions steps;
  steps.max_search_steps = 3;
  EXPECT_THROW(solve_pbe(BuildBaselineGame(Figure1Profile(), Q(1, 2)), steps),
               OracleSizeError);
}

TEST(Solver, UnknownVariant) {
  GameInputs in;
  in.profile = Figure1Profile();
  EXPECT_THROW(build_game("auction", in), std::invalid_argument);
  EXPECT_THROW(build_game("tech", in), std::invalid_argument);
  EXPECT_NO_THROW(build_game("baseline", in));
}

TEST(Solver, RejectsInvalidPrimitives) {
  ProfitProfile p = Figure1Profile();
  p.pi_bar_L = p.pi_F + p.pi_E + 1;  // A1(i) fails
  EXPECT_THROW(BuildBaselineGame(p, Q(1, 2)), ValidationError);
  EXPECT_THROW(BuildBaselineGame(Figure1Profile(), Q(1)), ValidationError);
}

TEST(Tech, LowSellsToHighOnly) {
  const GainProfile gp = ToGains(Figure1Profile(), Q(1));
  const Rational lam = Q(1, 4);  // above 17/77
  const GameSpec g = BuildTechGame(gp, lam);
  const PBEResult r = solve_pbe(g);
  ASSERT_FALSE(r.equilibria.empty());
  const auto s = Firm1Strategy(g, r);
  EXPECT_EQ(s[1].action, Action::kSellTech);
  EXPECT_TRUE(s[1].sells_to_high_only);
  EXPECT_EQ(s[0].action, Action::kAcquihire);
  const AgreementReport rep = certify(solve_tech(gp, lam), g, r);
  EXPECT_TRUE(rep.agree) << Join(rep.diffs);
  EXPECT_TRUE(OneShotDeviationCheck(g, r, r.equilibria[0]));
}

TEST(Tech, ThresholdAcrossShares) {
  const ProfitProfile p = Figure1Profile();
  for (const Rational& tau : {Q(0), Q(1, 4), Q(1, 2), Q(1)}) {
    const GainProfile gp = ToGains(p, tau);
    const AgreementReport rep = certify_threshold(
        lambda_A_tau(gp).threshold, Grid(40),
        [&](const Rational& l) { return LowActs(BuildTechGame(gp, l)); });
    EXPECT_TRUE(rep.agree) << FormatSig(tau) << "\n" << Join(rep.diffs);
  }
}

TEST(Tech, PoolingNeedsAPunishingBelief) {
  // Below the threshold, pooling on acquisition survives only if firm 2
  // reads a skipped bid as a High firm 1 and then buys to resell.
  const GainProfile gp = ToGains(Figure1Profile(), Q(1));
  const PBEResult r = solve_pbe(BuildTechGame(gp, Q(1, 10)));
  EXPECT_FALSE(r.uniqueness_of_firm1_behavior);
  EXPECT_TRUE(r.unique_passive_firm1_behavior);
  for (size_t k = 0; k < r.equilibria.size(); ++k) {
    if (r.ActionAt(static_cast<int>(k), "f1[theta1=L]") == "Acquihire") {
      EXPECT_FALSE(r.equilibria[k].passive);
    }
  }
}

TEST(Tech, SalePriceOnPath) {
  const GainProfile gp = ToGains(Figure1Profile(), Q(1));
  const Rational lam = Q(1, 2);
  const PBEResult r = solve_pbe(BuildTechGame(gp, lam));
  EXPECT_EQ(r.equilibria[0].outcome_distribution.at(kOutcomeFirm1LowSells),
            (1 - lam) * lam);
}

TEST(Partial, FirmOneValuesMatchClosedForm) {
  const ProfitProfile p = Figure1Profile();
  const OwnershipCurves c = OwnershipCurves::Power(Q(9, 10), Q(3, 10));
  for (const Rational& lam : {Q(1, 10), Q(3, 10), Q(1, 2), Q(4, 5)}) {
    const PartialResult closed = solve_partial(p, c, lam, 101, 5);
    std::vector<Rational> shares;
    if (closed.best_invest) shares.push_back(closed.best_invest->share);
    const GameSpec g = BuildPartialGame(p, c, lam, shares);
    const PBEResult r = solve_pbe(g);
    const AgreementReport rep = certify_partial(closed, g, r);
    EXPECT_TRUE(rep.agree) << FormatSig(lam) << "\n" << Join(rep.diffs);
  }
}

TEST(Partial, InvestPathPayoffs) {
  const ProfitProfile p = Figure1Profile();
  const OwnershipCurves c = OwnershipCurves::Power(Q(9, 10), Q(3, 10));
  const Rational lam = Q(2, 5);
  const GameSpec g = BuildPartialGame(p, c, lam, {Q(1, 2)});
  const PBEResult r = solve_pbe(g);
  const int low = r.InfoSetIndex("f1[theta1=L]");
  const InfoSet& is = r.info_sets[low];
  const auto it = std::find(is.actions.begin(), is.actions.end(), "Invest:1/2");
  ASSERT_NE(it, is.actions.end());
  const Rational oracle =
      ActionValue(g, r, r.equilibria[0], low, static_cast<int>(it - is.actions.begin()));
  const PartialRegime regime =
      RegimeOf(firm2_best_response(MatchType::kLow, Q(1, 2), p, c),
               firm2_best_response(MatchType::kHigh, Q(1, 2), p, c));
  EXPECT_EQ(oracle, firm1_payoff(regime, Q(1, 2), lam, p, c).value);
}

TEST(Partial, RejectsBadShare) {
  const OwnershipCurves c = OwnershipCurves::Power(Q(9, 10), Q(3, 10));
  EXPECT_THROW(BuildPartialGame(Figure1Profile(), c, Q(1, 2), {Q(0)}),
               ValidationError);
}

TEST(UncertainOrder, AllAcquireExistsIffAboveLambdaPrime) {
  const ProfitProfile p = Figure1Profile();
  const Threshold t = lambda_prime(p);
  const AgreementReport rep =
      certify_threshold(t, Grid(24), [&](const Rational& l) {
        const GameSpec g = BuildUncertainOrderGame(p, l);
        const PBEResult r = solve_pbe(g);
        EXPECT_TRUE(r.unordered);
        for (size_t k = 0; k < r.equilibria.size(); ++k) {
          bool all = true;
          for (const char* n : {"f1[theta1=H]", "f1[theta1=L]", "f2[theta2=H]",
                                "f2[theta2=L]"}) {
            all = all && r.ActionAt(static_cast<int>(k), n) == "Acquihire";
          }
          if (all) return true;
        }
        return false;
      });
  EXPECT_TRUE(rep.agree) << Join(rep.diffs);
}

TEST(SurplusShare, ThresholdOnGrid) {
  const ProfitProfile p = Figure1Profile();
  for (const Rational& sigma : {Q(0), Q(1, 10), Q(1, 4)}) {
    const SurplusShareResult closed = lambda_AS(p, sigma);
    const AgreementReport rep =
        certify_threshold(closed.threshold, Grid(40), [&](const Rational& l) {
          return LowActs(BuildSurplusShareGame(p, sigma, l));
        });
    EXPECT_TRUE(rep.agree) << FormatSig(sigma) << "\n" << Join(rep.diffs);
  }
  EXPECT_THROW(BuildSurplusShareGame(p, Q(1), Q(1, 2)), ValidationError);
}

TEST(SurplusShare, ZeroShareIsBaseline) {
  const ProfitProfile p = Figure1Profile();
  for (const Rational& lam : {Q(1, 3), Q(2, 5)}) {
    const GameSpec g = BuildSurplusShareGame(p, Q(0), lam);
    EXPECT_TRUE(certify(solve_baseline(p, lam), g, solve_pbe(g)).agree);
  }
}

TEST(NFirm, CournotExampleThreeFirms) {
  const Rational lam = Q(1, 10);
  const CournotParams base{Q(10), Q(1), Q(3), Q(2), Q(0), 3};
  const ProfitProfile p = nfirm_profit_profile(base, Q(537, 1000));
  const NFirmCondition closed = nfirm_hoarding_condition(3, p, lam);
  const GameSpec g = BuildNFirmGame(3, p, lam);
  const PBEResult r = solve_pbe(g);
  ASSERT_FALSE(r.equilibria.empty());
  EXPECT_TRUE(r.uniqueness_of_firm1_behavior);
  // Low firm 1 acquihires exactly when the n-firm condition holds.
  EXPECT_EQ(r.ActionAt(0, "f1[theta1=L]") == "Acquihire", closed.hoarding);
  EXPECT_TRUE(OneShotDeviationCheck(g, r, r.equilibria[0]));
}

TEST(NFirm, TwoFirmsMatchBaseline) {
  const ProfitProfile p = Figure1Profile();
  for (const Rational& lam : {Q(1, 5), Q(1, 2)}) {
    const PBEResult r = solve_pbe(BuildNFirmGame(2, p, lam));
    EXPECT_EQ(r.ActionAt(0, "f1[theta1=L]") == "Acquihire",
              lambda_A(p).Admits(lam));
  }
  EXPECT_THROW(BuildNFirmGame(9, p, Q(1, 2)), ValidationError);
}

TEST(NFirm, ConditionOnGrid) {
  testing::RationalGen gen(12);
  for (int i = 0; i < 10; ++i) {
    const ProfitProfile p = testing::RandomA1Profile(gen);
    const Rational lam = gen.Inside(Q(0), Q(1));
    const int n = static_cast<int>(gen.Int(2, 5));
    const PBEResult r = solve_pbe(BuildNFirmGame(n, p, lam));
    EXPECT_EQ(r.ActionAt(0, "f1[theta1=L]") == "Acquihire",
              nfirm_hoarding_condition(n, p, lam).hoarding);
  }
}

TEST(Labor, MatchesEnumeration) {
  const ProfitProfile p = Figure1Profile();
  for (const Rational& lam : {Q(1, 5), Q(2, 5), Q(3, 5), Q(4, 5)}) {
    for (const ShockParams& s :
         {ShockParams{Q(1, 2), Q(3, 10), Q(1, 2)},
          ShockParams{Q(1, 3), Q(2, 3), Q(0)},
          ShockParams{Q(2, 3), Q(1, 6), Q(1)}}) {
      const LaborCertification c = certify_labor(p, s, lam);
      EXPECT_TRUE(c.agreement.agree)
          << FormatSig(lam) << "\n" << Join(c.agreement.diffs);
      EXPECT_EQ(c.oracle_rates, enumerate_exact(p, s, lam));
      EXPECT_GT(c.equilibria, 0);
    }
  }
}

TEST(Labor, Passive) {
  // Above the no-shock threshold both firm-1 types hire and the supporting
  // equilibrium needs no punishing belief.
  const LaborCertification c =
      certify_labor(Figure1Profile(), {Q(1, 2), Q(3, 10), Q(1, 2)}, Q(3, 5));
  EXPECT_TRUE(c.agreement.agree);
  EXPECT_TRUE(c.passive);
}

TEST(Solver, FixedActions) {
  const GameSpec g = BuildBaselineGame(Figure1Profile(), Q(1, 2));
  SolveOptions opt;
  opt.fixed_actions["f1[theta1=L]"] = "Nothing";
  // Low firm 1 strictly prefers to hoard at 1/2 > 17/48.
  EXPECT_EQ(solve_pbe(g, opt).equilibria_found, 0);
  opt.fixed_actions["f1[theta1=L]"] = "Bid";
  EXPECT_THROW(solve_pbe(g, opt), std::invalid_argument);
  opt.fixed_actions = {{"f9[]", "Nothing"}};
  EXPECT_THROW(solve_pbe(g, opt), std::invalid_argument);
}

TEST(Labor, OneShotDeviation) {
  const ProfitProfile p = Figure1Profile();
  const ShockParams s{Q(1, 2), Q(3, 10), Q(1, 2)};
  const GameSpec g = BuildLaborGame(p, s, Q(3, 5));
  const PBEResult r = solve_pbe(g);
  ASSERT_FALSE(r.equilibria.empty());
  for (const auto& eq : r.equilibria) EXPECT_TRUE(OneShotDeviationCheck(g, r, eq));
}

}  // namespace
}  // namespace acquihire
