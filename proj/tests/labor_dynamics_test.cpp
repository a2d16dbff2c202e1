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

#include "acquihire/labor_dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "acquihire/equilibrium.hpp"
#include "test_support.hpp"

namespace acquihire {
namespace {

using testing::Figure1Profile;
using testing::Q;

// 5 x 5 x 5 x 5 lattice over (lambda, delta, gamma, r).
struct LatticePoint {
  Rational lambda;
  ShockParams params;
};

std::vector<LatticePoint> Lattice() {
  const std::vector<Rational> open = {Q(1, 6), Q(1, 3), Q(1, 2), Q(2, 3),
                                      Q(5, 6)};
  const std::vector<Rational> rs = {Q(0), Q(1, 4), Q(1, 2), Q(3, 4), Q(1)};
  std::vector<LatticePoint> out;
  for (const Rational& l : open)
    for (const Rational& d : open)
      for (const Rational& g : open)
        for (const Rational& r : rs) out.push_back({l, ShockParams{d, g, r}});
  return out;
}

// No preemption motive: the rival's profit does not depend on who holds
// the entrepreneur. A1(i) holds; A1(ii) does not.
ProfitProfile BenchmarkProfile() {
  return ProfitProfile{Q(1), Q(3), Q(3, 2), Q(1), Q(1), Q(1)};
}

TEST(ShockDistribution, Identities) {
  for (const LatticePoint& pt : Lattice()) {
    const ShockParams& s = pt.params;
    const ShockDistribution d = shock_distribution(s.gamma, s.r);
    EXPECT_EQ(d.p_DD + d.p_DN + d.p_ND + d.p_NN, 1);
    EXPECT_EQ(d.p_DD + d.p_DN, s.gamma);
    EXPECT_EQ(d.p_DD + d.p_ND, s.gamma);
    EXPECT_GE(d.p_DN, 0);
    EXPECT_GE(d.p_NN, 0);
    if (s.r == 0) EXPECT_EQ(d.p_DD, s.gamma * s.gamma);
    if (s.r == 1) {
      EXPECT_EQ(d.p_DN, 0);
      EXPECT_EQ(d.p_ND, 0);
    }
  }
}

TEST(ShockDistribution, RejectsRanges) {
  EXPECT_THROW(shock_distribution(Q(0), Q(1, 2)), ValidationError);
  EXPECT_THROW(shock_distribution(Q(1), Q(1, 2)), ValidationError);
  EXPECT_THROW(shock_distribution(Q(1, 2), Q(-1, 10)), ValidationError);
  EXPECT_THROW(shock_distribution(Q(1, 2), Q(11, 10)), ValidationError);
  EXPECT_THROW(ValidateShockParams({Q(0), Q(1, 2), Q(0)}), ValidationError);
}

// The hard-coded posteriors against Bayes' rule on the joint table.
TEST(HoardingThresholds, PosteriorsMatchBayes) {
  const ProfitProfile p = Figure1Profile();
  for (const LatticePoint& pt : Lattice()) {
    const ShockParams& s = pt.params;
    const ShockDistribution d = shock_distribution(s.gamma, s.r);
    const PeriodThresholds t = hoarding_thresholds(p, s, pt.lambda);
    EXPECT_EQ(t.mu_D, pt.lambda * d.p_DN / (d.p_DD + d.p_DN));
    EXPECT_EQ(t.mu_N, pt.lambda * d.p_NN / (d.p_ND + d.p_NN));
    EXPECT_EQ(t.mu_D, pt.lambda * d.Conditional(Shock::kDowngrade, Shock::kNone));
  }
}

TEST(HoardingThresholds, OrderingOnLattice) {
  const ProfitProfile p = Figure1Profile();
  for (const LatticePoint& pt : Lattice()) {
    const PeriodThresholds t = hoarding_thresholds(p, pt.params, pt.lambda);
    EXPECT_GE(t.l1, t.l2);
    EXPECT_GE(t.l2, t.l3);
    EXPECT_EQ(t.l3, Q(17, 48));
  }
}

TEST(HoardingThresholds, NoShockLimit) {
  const ProfitProfile p = Figure1Profile();
  const ShockParams tiny{Q(1, 1000000), Q(1, 1000000), Q(1, 2)};
  const PeriodThresholds t = hoarding_thresholds(p, tiny, Q(1, 2));
  EXPECT_LT(std::abs(ToDouble(t.l1) - 17.0 / 48), 1e-6);
  EXPECT_LT(std::abs(ToDouble(t.l2) - 17.0 / 48), 1e-6);
}

TEST(HoardingThresholds, Figure1Classification) {
  // mu_D = 0.6 * 0.5 * 0.7 = 0.21 <= 17/48 < mu_N = 0.6 * 0.85 = 0.51.
  const PeriodThresholds t = hoarding_thresholds(
      Figure1Profile(), {Q(1, 2), Q(3, 10), Q(1, 2)}, Q(3, 5));
  EXPECT_EQ(t.mu_D, Q(21, 100));
  EXPECT_EQ(t.mu_N, Q(51, 100));
  EXPECT_EQ(t.labor_case, LaborCase::kCase2);
  // The enumeration agrees: a Low employer lays off only after a downgrade.
  const LaborOutcome ex =
      enumerate_exact(Figure1Profile(), {Q(1, 2), Q(3, 10), Q(1, 2)}, Q(3, 5));
  EXPECT_EQ(ex.layoff_rate, Q(1, 2) * Q(3, 10));
}

TEST(HoardingThresholds, RequiresA1) {
  EXPECT_THROW(hoarding_thresholds(BenchmarkProfile(), {Q(1, 2), Q(1, 2), Q(0)},
                                   Q(1, 2)),
               ValidationError);
}

TEST(BenchmarkRates, Examples) {
  const LaborOutcome b = benchmark_rates(Q(1, 2), {Q(1, 2), Q(1, 5), Q(0)});
  EXPECT_EQ(b.hire_rate, Q(3, 4));
  EXPECT_EQ(b.layoff_rate, Q(75, 1000));
  const LaborOutcome c = benchmark_rates(Q(1, 3), {Q(1, 2), Q(1, 5), Q(1)});
  EXPECT_EQ(c.exit_rate, c.layoff_rate);
  const LaborOutcome tiny =
      benchmark_rates(Q(1, 1000000), {Q(1, 2), Q(1, 5), Q(0)});
  EXPECT_LT(ToDouble(tiny.hire_rate), 1e-5);
}

TEST(EnumerateExact, ReproducesBenchmarkOnLattice) {
  const ProfitProfile p = BenchmarkProfile();
  for (const LatticePoint& pt : Lattice()) {
    const LaborOutcome ex = enumerate_exact(p, pt.params, pt.lambda);
    const LaborOutcome closed = benchmark_rates(pt.lambda, pt.params);
    EXPECT_EQ(ex.hire_rate, closed.hire_rate);
    EXPECT_EQ(ex.layoff_rate, closed.layoff_rate);
    EXPECT_EQ(ex.exit_rate, closed.exit_rate);
  }
}

TEST(EnumerateExact, HoardingClosedFormsOnLattice) {
  const ProfitProfile p = Figure1Profile();
  for (const LatticePoint& pt : Lattice()) {
    SCOPED_TRACE(FormatSig(pt.lambda) + " " + FormatSig(pt.params.delta) + " " +
                 FormatSig(pt.params.gamma) + " " + FormatSig(pt.params.r));
    const ExactLabor ex = enumerate_labor(p, pt.params, pt.lambda);
    const HoardingRates h = hoarding_rates(p, pt.params, pt.lambda);
    EXPECT_EQ(ex.rates.hire_rate, h.rates.hire_rate);
    EXPECT_EQ(ex.rates.layoff_rate, h.rates.layoff_rate);
    EXPECT_EQ(ex.rates.exit_rate, h.rates.exit_rate);
    // Period-1 payoff formulas against the enumerated values.
    EXPECT_EQ(ex.firm1_nothing_value[1], h.period1.nothing);
    // Below lambda_A a deviating Low acquirer also lays off without a
    // downturn, which the Case 3 formula does not price.
    if (h.labor_case != LaborCase::kNoHoarding) {
      EXPECT_EQ(ex.firm1_acquire_value[1], h.period1.acquihire);
    }
    EXPECT_TRUE(ex.strategies.firm1[0]);
    EXPECT_EQ(ex.strategies.firm1[1], h.labor_case != LaborCase::kNoHoarding);
    EXPECT_TRUE(ex.strategies.firm2[0]);
    EXPECT_FALSE(ex.strategies.firm2[1]);
    EXPECT_LE(ex.rates.exit_rate, ex.rates.layoff_rate);
    EXPECT_LE(ex.rates.layoff_rate, ex.rates.hire_rate);
    EXPECT_LE(ex.rates.hire_rate, 1);
    if (h.labor_case == LaborCase::kNoHoarding) {
      EXPECT_EQ(h.rates, benchmark_rates(pt.lambda, pt.params));
    }
  }
}

TEST(EnumerateExact, CaseLayoffFormulas) {
  const ProfitProfile p = Figure1Profile();
  int seen[4] = {0, 0, 0, 0};
  for (const LatticePoint& pt : Lattice()) {
    const PeriodThresholds t = hoarding_thresholds(p, pt.params, pt.lambda);
    const LaborOutcome ex = enumerate_exact(p, pt.params, pt.lambda);
    const Rational& d = pt.params.delta;
    const Rational& g = pt.params.gamma;
    ++seen[static_cast<int>(t.labor_case)];
    switch (t.labor_case) {
      case LaborCase::kCase1: EXPECT_EQ(ex.layoff_rate, 0); break;
      case LaborCase::kCase2: EXPECT_EQ(ex.layoff_rate, d * g); break;
      case LaborCase::kCase3:
        EXPECT_EQ(ex.layoff_rate, d * (1 - pt.lambda * (1 - g)));
        break;
      case LaborCase::kNoHoarding:
        EXPECT_EQ(ex.layoff_rate, d * (2 * pt.lambda - pt.lambda * pt.lambda) * g);
        break;
    }
  }
  for (int c = 0; c < 4; ++c) EXPECT_GT(seen[c], 0) << "case " << c;
}

TEST(EnumerateExact, RandomProfiles) {
  testing::RationalGen gen(20261014);
  const std::vector<LatticePoint> lattice = Lattice();
  for (int i = 0; i < 60; ++i) {
    const ProfitProfile p = testing::RandomA1Profile(gen);
    const LatticePoint& pt = lattice[gen.Int(0, lattice.size() - 1)];
    const PeriodThresholds t = hoarding_thresholds(p, pt.params, pt.lambda);
    // Exact ties with lambda_A change the period-2 tie rule; skip them.
    if (t.mu_D == t.l3 || t.mu_N == t.l3 || pt.lambda == t.l3) continue;
    const ExactLabor ex = enumerate_labor(p, pt.params, pt.lambda);
    const HoardingRates h = hoarding_rates(p, pt.params, pt.lambda);
    EXPECT_EQ(ex.rates, h.rates);
    if (h.labor_case != LaborCase::kNoHoarding) {
      EXPECT_EQ(ex.firm1_acquire_value[1], h.period1.acquihire);
    }
    EXPECT_EQ(ex.firm1_nothing_value[1], h.period1.nothing);
  }
}

TEST(Prop3, HiringAndLayoffs) {
  const ProfitProfile p = Figure1Profile();
  const Rational la = Q(17, 48);
  int checked = 0;
  for (const LatticePoint& pt : Lattice()) {
    const HoardingRates h = hoarding_rates(p, pt.params, pt.lambda);
    const LaborOutcome b = benchmark_rates(pt.lambda, pt.params);
    EXPECT_GE(h.rates.hire_rate, b.hire_rate);
    if (h.labor_case != LaborCase::kNoHoarding) {
      EXPECT_GT(h.rates.hire_rate, b.hire_rate);
    }
    if (prop3_check(pt.lambda, la, pt.params.gamma, pt.params.r) &&
        h.labor_case != LaborCase::kNoHoarding) {
      EXPECT_GE(h.rates.layoff_rate, b.layoff_rate);
      EXPECT_NE(h.labor_case, LaborCase::kCase1);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Prop3, Examples) {
  EXPECT_FALSE(prop3_check(Q(9, 10), Q(3, 10), Q(1, 10), Q(0)));
  EXPECT_TRUE(prop3_check(Q(1, 2), Q(3, 10), Q(1, 10), Q(1)));
  EXPECT_TRUE(prop3_check(Q(1, 2), Q(3, 10), Q(999, 1000), Q(0)));
}

TEST(Simulate, WithinThreeStandardErrors) {
  const std::vector<std::pair<ProfitProfile, LatticePoint>> cases = {
      {Figure1Profile(), {Q(3, 5), {Q(1, 2), Q(3, 10), Q(1, 2)}}},
      {Figure1Profile(), {Q(1, 3), {Q(2, 3), Q(1, 2), Q(1, 4)}}},
      {BenchmarkProfile(), {Q(1, 2), {Q(1, 2), Q(1, 5), Q(0)}}},
  };
  for (const auto& [p, pt] : cases) {
    const LaborOutcome ex = enumerate_exact(p, pt.params, pt.lambda);
    const SimulationResult mc = simulate(p, pt.params, pt.lambda, 100000, 7);
    auto near = [](double est, double se, const Rational& exact) {
      if (se == 0) return est == ToDouble(exact);
      return std::abs(est - ToDouble(exact)) <= 3 * se;
    };
    EXPECT_TRUE(near(mc.hire_rate, mc.hire_se, ex.hire_rate));
    EXPECT_TRUE(near(mc.layoff_rate, mc.layoff_se, ex.layoff_rate));
    EXPECT_TRUE(near(mc.exit_rate, mc.exit_se, ex.exit_rate));
  }
}

TEST(Simulate, DeterministicAndValidated) {
  const ProfitProfile p = Figure1Profile();
  const ShockParams s{Q(1, 2), Q(3, 10), Q(1, 2)};
  const SimulationResult a = simulate(p, s, Q(3, 5), 20000, 42);
  const SimulationResult b = simulate(p, s, Q(3, 5), 20000, 42);
  EXPECT_EQ(a.hire_rate, b.hire_rate);
  EXPECT_EQ(a.layoff_rate, b.layoff_rate);
  EXPECT_EQ(a.exit_rate, b.exit_rate);
  const SimulationResult one = simulate(p, s, Q(3, 5), 1, 3);
  for (double x : {one.hire_rate, one.layoff_rate, one.exit_rate}) {
    EXPECT_TRUE(x == 0 || x == 1);
  }
  EXPECT_THROW(simulate(p, s, Q(3, 5), 0, 1), ValidationError);
}

TEST(EnumerateExact, RejectsA1iFailure) {
  ProfitProfile p = BenchmarkProfile();
  p.pi_bar_H = Q(3, 2);  // pi_bar_H < pi_F + pi_E
  EXPECT_THROW(enumerate_exact(p, {Q(1, 2), Q(1, 2), Q(0)}, Q(1, 2)),
               ValidationError);
}

}  // namespace
}  // namespace acquihire
