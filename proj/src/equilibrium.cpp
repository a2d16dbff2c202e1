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

#include <stdexcept>

#include "acquihire/conventions.hpp"

namespace acquihire {
namespace {

void RequireLambda(const Rational& lambda) { MatchPrior check(lambda); }

// "act iff lambda >= num/den" for a positive denominator.
Threshold Ratio(const Rational& num, const Rational& den, const char* what) {
  if (den <= 0) {
    return Threshold::Undefined(std::string(what) +
                                ": denominator " + FormatSig(den) + " <= 0");
  }
  return Threshold::FromValue(num / den);
}

// Both firms' strategies in the baseline: firm 2 acquihires iff High.
std::vector<StrategyEntry> BaselineStrategy(bool low_acquihires) {
  return {
      {1, MatchType::kHigh, Action::kAcquihire, std::nullopt, false},
      {1, MatchType::kLow,
       low_acquihires ? Action::kAcquihire : Action::kNothing, std::nullopt,
       false},
      {2, MatchType::kHigh, Action::kAcquihire, std::nullopt, false},
      {2, MatchType::kLow, Action::kNothing, std::nullopt, false},
  };
}

std::map<std::string, Rational> BaselineOutcomes(const Rational& lambda,
                                                 bool low_acquihires) {
  std::map<std::string, Rational> out;
  const Rational mu = 1 - lambda;
  out[kOutcomeFirm1High] = lambda;
  if (low_acquihires) {
    out[kOutcomeFirm1Low] = mu;
    out[kOutcomeFirm2High] = 0;
    out[kOutcomeNone] = 0;
  } else {
    out[kOutcomeFirm1Low] = 0;
    out[kOutcomeFirm2High] = mu * lambda;
    out[kOutcomeNone] = mu * mu;
  }
  out[kOutcomeFirm2Low] = 0;
  return out;
}

}  // namespace

std::string ToString(ThresholdVerdict v) {
  switch (v) {
    case ThresholdVerdict::kInterior:
      return "interior";
    case ThresholdVerdict::kAlways:
      return "always";
    case ThresholdVerdict::kNever:
      return "never";
  }
  return "?";
}

std::string ToString(Action a) {
  switch (a) {
    case Action::kAcquihire:
      return "Acquihire";
    case Action::kInvest:
      return "Invest";
    case Action::kSellTech:
      return "SellTech";
    case Action::kNothing:
      return "Nothing";
  }
  return "?";
}

std::string ToString(CsRegime r) {
  switch (r) {
    case CsRegime::kAllHarm:
      return "AllHarm";
    case CsRegime::kAllBenefit:
      return "AllBenefit";
    case CsRegime::kHarmIffBetween:
      return "HarmIffBetween";
  }
  return "?";
}

Threshold Threshold::FromValue(Rational v) {
  Threshold t;
  if (v <= 0) {
    t.verdict = ThresholdVerdict::kAlways;
  } else if (v >= 1) {
    t.verdict = ThresholdVerdict::kNever;
  } else {
    t.verdict = ThresholdVerdict::kInterior;
  }
  t.value = std::move(v);
  return t;
}

Threshold Threshold::Undefined(std::string why) {
  Threshold t;
  t.verdict = ThresholdVerdict::kNever;
  t.diagnostic = std::move(why);
  return t;
}

bool Threshold::Admits(const Rational& lambda) const {
  if (!value) return false;
  if constexpr (conventions::kAcquihireAtThreshold) {
    return lambda >= *value;
  } else {
    return lambda > *value;
  }
}

std::string StrategyEntry::Describe() const {
  std::string s = ToString(action);
  if (action == Action::kInvest && share) s += "(" + FormatSig(*share) + ")";
  if (action == Action::kSellTech && sells_to_high_only) s += "(to High)";
  return s;
}

const StrategyEntry& EquilibriumReport::Entry(int firm, MatchType type) const {
  for (const auto& e : strategy) {
    if (e.firm == firm && e.type == type) return e;
  }
  throw std::out_of_range("no strategy entry for firm " + std::to_string(firm));
}

bool EquilibriumReport::operator==(const EquilibriumReport& o) const {
  auto th = [](const HoardingThresholds& a, const HoardingThresholds& b) {
    return a.lambda_A == b.lambda_A && a.lambda_CS == b.lambda_CS &&
           a.lambda_A_tau == b.lambda_A_tau &&
           a.lambda_prime == b.lambda_prime && a.lambda_AS == b.lambda_AS &&
           a.lambda_D == b.lambda_D && a.lambda_C == b.lambda_C;
  };
  return variant == o.variant && lambda == o.lambda &&
         strategy == o.strategy && bid == o.bid &&
         outcome_distribution == o.outcome_distribution &&
         th(thresholds, o.thresholds) && sale_price == o.sale_price &&
         expected_cs_allowed == o.expected_cs_allowed &&
         expected_cs_banned == o.expected_cs_banned &&
         expected_cs_only_high == o.expected_cs_only_high &&
         total_surplus_allowed == o.total_surplus_allowed &&
         total_surplus_banned == o.total_surplus_banned &&
         regime == o.regime && harmful == o.harmful;
}

Threshold lambda_A(const ProfitProfile& p) {
  RequireBaseline(p);
  return Ratio(p.pi_E + p.pi_F - p.pi_bar_L, p.pi_F - p.pi_under_H, "lambda_A");
}

bool LowFirstMoverAcquihires(const ProfitProfile& profile,
                             const Rational& lambda) {
  return lambda_A(profile).Admits(lambda);
}

EquilibriumReport solve_baseline(const ProfitProfile& profile,
                                 const Rational& lambda,
                                 const std::optional<SurplusProfile>& surplus) {
  RequireLambda(lambda);
  EquilibriumReport r;
  r.variant = "baseline";
  r.lambda = lambda;
  r.thresholds.lambda_A = lambda_A(profile);
  const bool low = r.thresholds.lambda_A->Admits(lambda);
  r.strategy = BaselineStrategy(low);
  r.bid = profile.pi_E;
  r.outcome_distribution = BaselineOutcomes(lambda, low);
  if (surplus) {
    CsRegimeResult cs = cs_regime(profile, *surplus, lambda);
    r.thresholds.lambda_CS = cs.lambda_CS;
    r.expected_cs_allowed = cs.cs_allowed;
    r.expected_cs_banned = cs.cs_banned;
    r.expected_cs_only_high = cs.cs_only_high;
    r.regime = cs.regime;
    r.harmful = cs.harmful;
    r.total_surplus_allowed =
        expected_total_surplus(profile, *surplus, lambda, Policy::kAllow);
    r.total_surplus_banned =
        expected_total_surplus(profile, *surplus, lambda, Policy::kBan);
  }
  return r;
}

Threshold lambda_CS(const SurplusProfile& s) {
  RequireSurplus(s);
  if (s.cs_H == s.cs_L) {
    return Threshold::Undefined("lambda_CS: cs_H == cs_L, degenerate regime");
  }
  return Threshold::FromValue((s.cs_F + s.cs_E - s.cs_L) / (s.cs_H - s.cs_L));
}

CsRegimeResult cs_regime(const ProfitProfile& profile, const SurplusProfile& s,
                         const Rational& lambda) {
  RequireLambda(lambda);
  CsRegimeResult r;
  r.lambda_A = lambda_A(profile);
  r.lambda_CS = lambda_CS(s);
  const Rational standalone = s.cs_F + s.cs_E;
  if (standalone > s.cs_H) {
    r.regime = CsRegime::kAllHarm;
  } else if (s.cs_L > standalone || s.cs_H == s.cs_L) {
    r.regime = CsRegime::kAllBenefit;
  } else {
    r.regime = CsRegime::kHarmIffBetween;
  }

  const Rational none = (1 - lambda) * (1 - lambda);
  const Rational only_high = none * standalone + (1 - none) * s.cs_H;
  r.cs_banned = standalone;
  r.cs_only_high = only_high;
  r.cs_allowed = r.lambda_A.Admits(lambda)
                     ? Rational(lambda * s.cs_H + (1 - lambda) * s.cs_L)
                     : only_high;

  switch (r.regime) {
    case CsRegime::kAllHarm:
      r.harmful = true;
      break;
    case CsRegime::kAllBenefit:
      r.harmful = false;
      break;
    case CsRegime::kHarmIffBetween:
      r.harmful = r.lambda_A.Admits(lambda) && lambda < *r.lambda_CS.value;
      break;
  }
  return r;
}

Rational expected_total_surplus(const ProfitProfile& p, const SurplusProfile& s,
                                const Rational& lambda, Policy policy) {
  RequireLambda(lambda);
  RequireSurplus(s);
  const Rational none = 2 * p.pi_F + p.pi_E + s.cs_F + s.cs_E;
  if (policy == Policy::kBan) return none;
  const Rational high = p.pi_bar_H + p.pi_under_H + s.cs_H;
  const Rational low = p.pi_bar_L + p.pi_under_L + s.cs_L;
  const auto dist = BaselineOutcomes(lambda, LowFirstMoverAcquihires(p, lambda));
  return dist.at(kOutcomeFirm1High) * high + dist.at(kOutcomeFirm1Low) * low +
         dist.at(kOutcomeFirm2High) * high + dist.at(kOutcomeFirm2Low) * low +
         dist.at(kOutcomeNone) * none;
}

Rational TechSaleSurplus(const GainProfile& g, MatchType seller,
                         MatchType buyer) {
  return g.tau * (g.g_bar(buyer) + g.g_under(seller) - g.g_bar(seller) -
                  g.g_under(buyer));
}

Rational TechSalePrice(const GainProfile& g, MatchType seller, MatchType buyer) {
  // The seller gives up tau g_bar(seller) and suffers tau g_under(buyer);
  // it is paid that loss plus half the surplus.
  return g.tau * (g.g_bar(seller) + g.g_under(buyer)) +
         TechSaleSurplus(g, seller, buyer) / 2;
}

TechThreshold lambda_A_tau(const GainProfile& g) {
  RequireGains(g);
  const Rational a4 = g.g_bar_H + g.g_under_L - g.g_bar_L - g.g_under_H;
  TechThreshold out;
  out.threshold = Ratio(g.pi_E - g.g_bar_L, g.g_under_H + g.tau / 2 * a4,
                        "lambda_A_tau");
  out.sale_price =
      g.tau * (g.g_bar_H + g.g_under_L + g.g_bar_L + g.g_under_H) / 2;
  return out;
}

EquilibriumReport solve_tech(const GainProfile& g, const Rational& lambda) {
  RequireLambda(lambda);
  TechThreshold tt = lambda_A_tau(g);
  const bool low = tt.threshold.Admits(lambda);
  EquilibriumReport r;
  r.variant = "tech";
  r.lambda = lambda;
  r.thresholds.lambda_A_tau = tt.threshold;
  r.sale_price = tt.sale_price;
  r.bid = g.pi_E;
  r.strategy = BaselineStrategy(low);
  if (low) {
    r.strategy[1].action = Action::kSellTech;
    r.strategy[1].sells_to_high_only = true;
  }
  const Rational mu = 1 - lambda;
  r.outcome_distribution = BaselineOutcomes(lambda, low);
  if (low) {
    // Low firm 1 sells only when firm 2 turns out High.
    r.outcome_distribution[kOutcomeFirm1Low] = mu * mu;
    r.outcome_distribution[kOutcomeFirm1LowSells] = mu * lambda;
  } else {
    r.outcome_distribution[kOutcomeFirm1LowSells] = 0;
  }
  return r;
}

DominantThresholds dominant_thresholds(const DominantPair& pair) {
  const ProfitProfile& d = pair.dominant;
  const ProfitProfile& c = pair.challenger;
  DominantThresholds out;
  out.lambda_D = lambda_A(d);
  out.lambda_C = lambda_A(c);
  out.loss_condition = c.pi_F - c.pi_under_H < d.pi_F - d.pi_under_H;
  out.gain_condition = c.pi_bar_L - c.pi_F < d.pi_bar_L - d.pi_F;
  out.sufficient = out.loss_condition && out.gain_condition;
  out.challenger_higher = *out.lambda_C.value > *out.lambda_D.value;
  return out;
}

DominantPair proportional_pair(const ProportionalSpec& s) {
  if (!(s.mult_H > s.mult_L && s.mult_L > 1)) {
    throw ValidationError("mult_L", "need mult_H > mult_L > 1");
  }
  if (!(1 >= s.mult_l && s.mult_l > s.mult_h && s.mult_h >= 0)) {
    throw ValidationError("mult_l", "need 1 >= mult_l > mult_h >= 0");
  }
  if (!(s.pi_D > 0 && s.pi_C > 0)) {
    throw ValidationError("pi_C", "need pi_D > 0 and pi_C > 0");
  }
  auto build = [&](const Rational& pi) {
    return ProfitProfile{pi,          s.mult_H * pi, s.mult_L * pi,
                         s.mult_h * pi, s.mult_l * pi, s.pi_E};
  };
  DominantPair pair{build(s.pi_D), build(s.pi_C)};
  for (auto [side, prof] : {std::pair<const char*, const ProfitProfile*>{
                                "dominant", &pair.dominant},
                            {"challenger", &pair.challenger}}) {
    ValidationReport r = validate_baseline(*prof);
    if (!r.ok()) {
      throw ValidationError(side, std::string(side) + " profile fails " +
                                      r.Failures());
    }
  }
  return pair;
}

NFirmCondition nfirm_hoarding_condition(int n, const ProfitProfile& p,
                                        const Rational& lambda) {
  if (n < 2) throw ValidationError("n", "firm count n must be >= 2");
  RequireLambda(lambda);
  NFirmCondition c;
  c.n = n;
  c.lhs = p.pi_E;
  const Rational some_high =
      1 - Pow(Rational(1 - lambda), static_cast<unsigned>(n - 1));
  c.rhs = some_high * (p.pi_F - p.pi_under_H) + p.pi_bar_L - p.pi_F;
  c.hoarding = c.lhs <= c.rhs;
  c.inefficient = p.pi_E > p.pi_bar_L - p.pi_F;
  c.necessary = p.pi_bar_L - p.pi_under_H > p.pi_E;
  return c;
}

std::optional<int> nfirm_no_hoarding_onset(const CournotParams& base,
                                           const Rational& pi_E,
                                           const Rational& lambda, int n_max) {
  std::optional<int> onset;
  for (int n = 2; n <= n_max; ++n) {
    CournotParams p = base;
    p.n = n;
    NFirmCondition c =
        nfirm_hoarding_condition(n, nfirm_profit_profile(p, pi_E), lambda);
    if (c.hoarding) {
      onset.reset();
    } else if (!onset) {
      onset = n;
    }
  }
  return onset;
}

Threshold lambda_prime(const ProfitProfile& p) {
  RequireBaseline(p);
  return Ratio(p.pi_E + p.pi_under_L - p.pi_bar_L, p.pi_under_L - p.pi_under_H,
               "lambda_prime");
}

SurplusShareResult lambda_AS(const ProfitProfile& p, const Rational& sigma) {
  RequireBaseline(p);
  if (sigma < 0 || sigma > 1) {
    throw ValidationError("sigma", "sigma = " + FormatSig(sigma) +
                                       " must lie in [0,1]");
  }
  const Rational high_surplus = p.pi_bar_H - p.pi_F - p.pi_E;
  SurplusShareResult out;
  out.feasibility_bound = (p.pi_bar_L - p.pi_under_H - p.pi_E) / high_surplus;
  out.feasible = sigma <= out.feasibility_bound;
  out.threshold = Ratio(p.pi_E + p.pi_F - p.pi_bar_L,
                        p.pi_F - p.pi_under_H - sigma * high_surplus,
                        "lambda_AS");
  return out;
}

}  // namespace acquihire
