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

// Two-period version of the game. Between periods a public downturn hits
// with probability delta; each firm then privately learns whether it was
// downgraded (a High match becomes Low). In period 2 the employer keeps or
// lays off the entrepreneur and the rival may hire her.

#ifndef ACQUIHIRE_LABOR_DYNAMICS_HPP_
#define ACQUIHIRE_LABOR_DYNAMICS_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "acquihire/model_core.hpp"
#include "acquihire/rational.hpp"

namespace acquihire {

struct ShockParams {
  Rational delta;  // downturn probability, (0,1)
  Rational gamma;  // downgrade probability, (0,1)
  Rational r;      // shock correlation, [0,1]
};

// Throws ValidationError naming the offending field.
void ValidateShockParams(const ShockParams& params);

enum class Shock { kDowngrade, kNone };

struct ShockDistribution {
  Rational p_DD, p_DN, p_ND, p_NN;

  const Rational& P(Shock s1, Shock s2) const;
  // P(S_other = other | S_own = own), by Bayes on the joint table.
  Rational Conditional(Shock own, Shock other) const;
};

ShockDistribution shock_distribution(const Rational& gamma, const Rational& r);

struct LaborOutcome {
  Rational hire_rate;    // acquihire in period 1
  Rational layoff_rate;  // separation in period 2
  Rational exit_rate;    // laid off and not rehired

  bool operator==(const LaborOutcome&) const = default;
};

// hire 2 lambda - lambda^2, l* and u* in closed form.
LaborOutcome benchmark_rates(const Rational& lambda, const ShockParams& params);

enum class LaborCase { kCase1, kCase2, kCase3, kNoHoarding };

std::string ToString(LaborCase c);

struct PeriodThresholds {
  Rational l1;
  Rational l2;
  Rational l3;  // lambda_A
  Rational mu_D;  // posterior that the rival is High after own downgrade
  Rational mu_N;  // after no downgrade
  LaborCase labor_case = LaborCase::kNoHoarding;
};

// Throws ValidationError if A1 fails.
PeriodThresholds hoarding_thresholds(const ProfitProfile& profile,
                                     const ShockParams& params,
                                     const Rational& lambda);

struct Period1Payoffs {
  Rational nothing;    // low-match firm 1, both periods
  Rational acquihire;  // by the formula of the case below
  LaborCase formula_case = LaborCase::kCase3;
};

struct HoardingRates {
  LaborOutcome rates;
  LaborCase labor_case = LaborCase::kNoHoarding;
  Period1Payoffs period1;
};

// hire and layoff rates from the case formulas; exit from enumerate_exact.
HoardingRates hoarding_rates(const ProfitProfile& profile,
                             const ShockParams& params, const Rational& lambda);

// min{lambda_A / lambda, (1 - lambda) / lambda} > (1 - r)(1 - gamma).
bool prop3_check(const Rational& lambda, const Rational& lambda_A,
                 const Rational& gamma, const Rational& r);

// Period-1 strategies found by enumerate_exact, indexed by MatchType
// (0 = High, 1 = Low): true means acquihire.
struct LaborStrategies {
  std::array<bool, 2> firm1{};
  std::array<bool, 2> firm2{};  // after firm 1 did nothing
};

struct ExactLabor {
  LaborOutcome rates;
  LaborStrategies strategies;
  std::array<Rational, 2> firm1_acquire_value;  // by firm 1 type
  std::array<Rational, 2> firm1_nothing_value;
};

// Exact expectation over types, downturn and shocks. Every decision is a
// payoff comparison under Bayes beliefs, so the benchmark profile
// (pi_F = pi_under_H = pi_under_L), where lambda_A is undefined, works too.
// Requires A1(i) and pi_E >= 0 only. Throws std::runtime_error if no
// consistent period-1 strategy pair exists.
ExactLabor enumerate_labor(const ProfitProfile& profile,
                           const ShockParams& params, const Rational& lambda);

LaborOutcome enumerate_exact(const ProfitProfile& profile,
                             const ShockParams& params, const Rational& lambda);

struct SimulationResult {
  long trials = 0;
  double hire_rate = 0, layoff_rate = 0, exit_rate = 0;
  double hire_se = 0, layoff_se = 0, exit_se = 0;
};

// Monte Carlo under the strategies of enumerate_labor. Trials are drawn in
// batches of kSimulationBatch, each from its own engine seeded with
// (seed, batch index), so results do not depend on scheduling. Throws
// ValidationError if trials < 1.
inline constexpr long kSimulationBatch = 8192;
SimulationResult simulate(const ProfitProfile& profile,
                          const ShockParams& params, const Rational& lambda,
                          long trials, std::uint64_t seed);

}  // namespace acquihire

#endif  // ACQUIHIRE_LABOR_DYNAMICS_HPP_
