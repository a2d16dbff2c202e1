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

// Closed-form thresholds and equilibrium characterizations of the
// sequential acquihire game and its extensions.

#ifndef ACQUIHIRE_EQUILIBRIUM_HPP_
#define ACQUIHIRE_EQUILIBRIUM_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acquihire/cournot.hpp"
#include "acquihire/model_core.hpp"
#include "acquihire/rational.hpp"

namespace acquihire {

enum class ThresholdVerdict { kInterior, kAlways, kNever };

std::string ToString(ThresholdVerdict v);

// A cutoff on lambda with the rule "act iff lambda >= value". The formula
// value is kept even when it falls outside (0,1); the verdict says what the
// rule means for lambda in (0,1). value is empty when the formula's
// denominator is not positive (verdict kNever).
struct Threshold {
  std::optional<Rational> value;
  ThresholdVerdict verdict = ThresholdVerdict::kNever;
  std::string diagnostic;

  static Threshold FromValue(Rational v);
  static Threshold Undefined(std::string why);

  bool Admits(const Rational& lambda) const;
  bool operator==(const Threshold&) const = default;
};

// Every threshold that applies to one set of primitives.
struct HoardingThresholds {
  std::optional<Threshold> lambda_A;
  std::optional<Threshold> lambda_CS;
  std::optional<Threshold> lambda_A_tau;
  std::optional<Threshold> lambda_prime;
  std::optional<Threshold> lambda_AS;
  std::optional<Threshold> lambda_D;
  std::optional<Threshold> lambda_C;
};

enum class Action { kAcquihire, kInvest, kSellTech, kNothing };

std::string ToString(Action a);

struct StrategyEntry {
  int firm = 1;  // 1 moves first
  MatchType type = MatchType::kHigh;
  Action action = Action::kNothing;
  std::optional<Rational> share;  // kInvest only
  bool sells_to_high_only = false;  // kSellTech: acquires, sells to High

  std::string Describe() const;
  bool operator==(const StrategyEntry&) const = default;
};

enum class CsRegime { kAllHarm, kAllBenefit, kHarmIffBetween };

std::string ToString(CsRegime r);

struct EquilibriumReport {
  std::string variant;
  Rational lambda;
  std::vector<StrategyEntry> strategy;  // firm 1 H, firm 1 L, firm 2 H, firm 2 L
  Rational bid;
  // Outcome label -> probability; std::map keeps a stable key order.
  std::map<std::string, Rational> outcome_distribution;
  HoardingThresholds thresholds;
  std::optional<Rational> sale_price;
  std::optional<Rational> expected_cs_allowed;
  std::optional<Rational> expected_cs_banned;
  std::optional<Rational> expected_cs_only_high;
  std::optional<Rational> total_surplus_allowed;
  std::optional<Rational> total_surplus_banned;
  std::optional<CsRegime> regime;
  std::optional<bool> harmful;

  const StrategyEntry& Entry(int firm, MatchType type) const;
  bool operator==(const EquilibriumReport& o) const;
};

// Outcome labels.
inline constexpr const char* kOutcomeNone = "no_acquihire";
inline constexpr const char* kOutcomeFirm1High = "firm1_acquihire_H";
inline constexpr const char* kOutcomeFirm1Low = "firm1_acquihire_L";
inline constexpr const char* kOutcomeFirm2High = "firm2_acquihire_H";
inline constexpr const char* kOutcomeFirm2Low = "firm2_acquihire_L";
inline constexpr const char* kOutcomeFirm1LowSells = "firm1_acquihire_L_sells_tech";

// (pi_E + pi_F - pi_bar_L) / (pi_F - pi_under_H). Throws ValidationError
// if A1 fails.
Threshold lambda_A(const ProfitProfile& profile);

// Low first mover acquihires iff lambda >= lambda_A.
bool LowFirstMoverAcquihires(const ProfitProfile& profile,
                             const Rational& lambda);

EquilibriumReport solve_baseline(
    const ProfitProfile& profile, const Rational& lambda,
    const std::optional<SurplusProfile>& surplus = std::nullopt);

// (cs_F + cs_E - cs_L) / (cs_H - cs_L); undefined when cs_H == cs_L.
Threshold lambda_CS(const SurplusProfile& s);

struct CsRegimeResult {
  CsRegime regime = CsRegime::kHarmIffBetween;
  bool harmful = false;  // acquihires lower expected CS at this lambda
  Rational cs_allowed;
  Rational cs_banned;
  Rational cs_only_high;
  Threshold lambda_A;
  Threshold lambda_CS;
};

// Regime (i) when cs_F + cs_E > cs_H, (ii) when cs_L > cs_F + cs_E, (iii)
// otherwise. Equalities land in (iii), or in (ii) when cs_H == cs_L.
CsRegimeResult cs_regime(const ProfitProfile& profile, const SurplusProfile& s,
                         const Rational& lambda);

enum class Policy { kAllow, kBan };

// Expected profits of both firms, plus startup profit when it survives,
// plus consumer surplus, over the equilibrium outcome distribution. The
// acquisition price is a transfer and cancels.
Rational expected_total_surplus(const ProfitProfile& profile,
                                const SurplusProfile& s, const Rational& lambda,
                                Policy policy);

struct TechThreshold {
  Threshold threshold;
  Rational sale_price;  // low seller, high buyer
};

// (pi_E - g_bar_L) / (g_under_H + tau/2 (g_bar_H + g_under_L - g_bar_L -
// g_under_H)), price tau (g_bar_H + g_under_L + g_bar_L + g_under_H) / 2.
TechThreshold lambda_A_tau(const GainProfile& g);

// Split-the-surplus price when an owner of type `seller` sells to `buyer`.
Rational TechSalePrice(const GainProfile& g, MatchType seller, MatchType buyer);
Rational TechSaleSurplus(const GainProfile& g, MatchType seller,
                         MatchType buyer);

EquilibriumReport solve_tech(const GainProfile& g, const Rational& lambda);

struct DominantPair {
  ProfitProfile dominant;
  ProfitProfile challenger;
};

struct DominantThresholds {
  Threshold lambda_D;
  Threshold lambda_C;
  bool loss_condition = false;  // pi_C - pi_C^H < pi_D - pi_D^H
  bool gain_condition = false;  // pi_bar_C^L - pi_C < pi_bar_D^L - pi_D
  bool sufficient = false;      // both conditions
  bool challenger_higher = false;  // lambda_C > lambda_D
};

DominantThresholds dominant_thresholds(const DominantPair& pair);

struct ProportionalSpec {
  Rational pi_D;
  Rational pi_C;
  Rational mult_H;
  Rational mult_L;
  Rational mult_l;
  Rational mult_h;
  Rational pi_E;
};

// pi_bar_t = mult_t * pi, pi_under_t = mult * pi for both firms. Throws
// ValidationError naming the side ("dominant"/"challenger") that fails A1.
DominantPair proportional_pair(const ProportionalSpec& spec);

struct NFirmCondition {
  int n = 0;
  Rational lhs;  // pi_E
  Rational rhs;  // (1 - (1-lambda)^(n-1)) (pi_F - pi_under_H) + pi_bar_L - pi_F
  bool hoarding = false;      // lhs <= rhs
  bool inefficient = false;   // pi_E > pi_bar_L - pi_F
  bool necessary = false;     // pi_bar_L - pi_under_H > pi_E
  std::string verdict() const { return hoarding ? "satisfied" : "violated"; }
};

// `profile` holds the n-firm profits and pi_E.
NFirmCondition nfirm_hoarding_condition(int n, const ProfitProfile& profile,
                                        const Rational& lambda);

// Smallest N0 in [2, n_max] with no hoarding for every n in [N0, n_max], or
// nullopt if hoarding holds at n_max.
std::optional<int> nfirm_no_hoarding_onset(const CournotParams& base,
                                           const Rational& pi_E,
                                           const Rational& lambda,
                                           int n_max = 200);

// (pi_E + pi_under_L - pi_bar_L) / (pi_under_L - pi_under_H).
Threshold lambda_prime(const ProfitProfile& profile);

struct SurplusShareResult {
  Threshold threshold;     // lambda_AS
  bool feasible = false;   // sigma <= bound
  Rational feasibility_bound;
};

// sigma is the entrepreneur's share of the acquisition surplus.
SurplusShareResult lambda_AS(const ProfitProfile& profile,
                             const Rational& sigma);

}  // namespace acquihire

#endif  // ACQUIHIRE_EQUILIBRIUM_HPP_
