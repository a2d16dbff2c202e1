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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "acquihire/conventions.hpp"
#include "acquihire/equilibrium.hpp"

namespace acquihire {
namespace {

constexpr int kH = 0;
constexpr int kL = 1;

MatchType TypeOf(int i) { return i == kH ? MatchType::kHigh : MatchType::kLow; }

void RequireOpenUnit(const Rational& x, const char* field) {
  if (x <= 0 || x >= 1) {
    throw ValidationError(field, std::string(field) + " = " + FormatSig(x) +
                                     " must lie in (0,1)");
  }
}

void RequireLambdaOpen(const Rational& lambda) { MatchPrior check(lambda); }

// One realization of types, downturn and shocks.
struct World {
  int theta1 = kH;
  int theta2 = kH;
  bool downturn = false;
  Shock s1 = Shock::kNone;
  Shock s2 = Shock::kNone;
  Rational prob;
  double prob_d = 0;

  int Now1() const { return downturn && s1 == Shock::kDowngrade ? kL : theta1; }
  int Now2() const { return downturn && s2 == Shock::kDowngrade ? kL : theta2; }
};

std::vector<World> Worlds(const Rational& lambda, const ShockParams& params) {
  const ShockDistribution dist = shock_distribution(params.gamma, params.r);
  std::vector<World> out;
  const Shock shocks[2] = {Shock::kDowngrade, Shock::kNone};
  for (int t1 = 0; t1 < 2; ++t1) {
    for (int t2 = 0; t2 < 2; ++t2) {
      const Rational pt = (t1 == kH ? lambda : 1 - lambda) *
                          (t2 == kH ? lambda : 1 - lambda);
      World calm{t1, t2, false, Shock::kNone, Shock::kNone,
                 pt * (1 - params.delta)};
      out.push_back(calm);
      for (Shock a : shocks) {
        for (Shock b : shocks) {
          World w{t1, t2, true, a, b, pt * params.delta * dist.P(a, b)};
          out.push_back(w);
        }
      }
    }
  }
  for (World& w : out) w.prob_d = w.prob.get_d();
  return out;
}

// Period-1 history.
enum class History { kFirm1Employs, kFirm2Employs, kNone };

struct Period2 {
  Rational payoff1, payoff2;
  bool laid_off = false;
  bool exited = false;
};

class LaborGame {
 public:
  LaborGame(const ProfitProfile& p, const ShockParams& params,
            const Rational& lambda)
      : p_(p), lambda_(lambda), dist_(shock_distribution(params.gamma, params.r)) {}

  // Bayes beliefs that depend on the period-1 strategies.
  void SetStrategies(const LaborStrategies& s) {
    s_ = s;
    b1_ = PosteriorHigh(s.firm1);
    b2_ = PosteriorHigh(s.firm2);
  }
  const LaborStrategies& strategies() const { return s_; }

  // A firm that is not employing hires a laid-off or free entrepreneur
  // as the last mover iff that beats the standalone profit.
  bool Hires(int now) const {
    return p_.pi_bar(TypeOf(now)) - p_.pi_E >= p_.pi_F;
  }

  // Value for a firm whose rival may hire next, given P(rival High now).
  Rational RivalMayHire(const Rational& p_high_now) const {
    const Rational high = Hires(kH) ? p_.pi_under_H : p_.pi_F;
    const Rational low = Hires(kL) ? p_.pi_under_L : p_.pi_F;
    return p_high_now * high + (1 - p_high_now) * low;
  }

  // Probability the rival is High now, from the mover's own information.
  Rational RivalHighNow(const Rational& prior_high, const World& w,
                        Shock own) const {
    if (!w.downturn) return prior_high;
    return prior_high * dist_.Conditional(own, Shock::kNone);
  }

  Period2 Play(History h, const World& w) const {
    const int n1 = w.Now1();
    const int n2 = w.Now2();
    Period2 out;
    switch (h) {
      case History::kFirm1Employs: {
        const Rational keep = p_.pi_bar(TypeOf(n1)) - p_.pi_E;
        const Rational layoff = RivalMayHire(RivalHighNow(lambda_, w, w.s1));
        const bool kept = conventions::kKeepAtIndifference ? keep >= layoff
                                                            : keep > layoff;
        if (kept) {
          out.payoff1 = keep;
          out.payoff2 = p_.pi_under(TypeOf(n1));
        } else {
          out.laid_off = true;
          Settle(n2, /*hirer_is_firm1=*/false, out);
        }
        break;
      }
      case History::kFirm2Employs: {
        const Rational keep = p_.pi_bar(TypeOf(n2)) - p_.pi_E;
        const Rational layoff = RivalMayHire(RivalHighNow(b1_, w, w.s2));
        const bool kept = conventions::kKeepAtIndifference ? keep >= layoff
                                                            : keep > layoff;
        if (kept) {
          out.payoff2 = keep;
          out.payoff1 = p_.pi_under(TypeOf(n2));
        } else {
          out.laid_off = true;
          Settle(n1, /*hirer_is_firm1=*/true, out);
        }
        break;
      }
      case History::kNone: {
        const Rational acquire = p_.pi_bar(TypeOf(n1)) - p_.pi_E;
        const Rational wait = RivalMayHire(RivalHighNow(b2_, w, w.s1));
        const bool buy = conventions::kAcquihireAtThreshold ? acquire >= wait
                                                             : acquire > wait;
        if (buy) {
          out.payoff1 = acquire;
          out.payoff2 = p_.pi_under(TypeOf(n1));
        } else {
          Settle(n2, /*hirer_is_firm1=*/false, out);
        }
        break;
      }
    }
    return out;
  }

  // Expected two-period payoff of firm 1 of type theta1 choosing `acquire`.
  Rational Firm1Value(int theta1, bool acquire,
                      const std::vector<World>& worlds) const {
    Rational total = 0, mass = 0;
    for (const World& w : worlds) {
      if (w.theta1 != theta1) continue;
      mass += w.prob;
      Rational v;
      if (acquire) {
        v = p_.pi_bar(TypeOf(theta1)) - p_.pi_E +
            Play(History::kFirm1Employs, w).payoff1;
      } else if (s_.firm2[w.theta2]) {
        v = p_.pi_under(TypeOf(w.theta2)) +
            Play(History::kFirm2Employs, w).payoff1;
      } else {
        v = p_.pi_F + Play(History::kNone, w).payoff1;
      }
      total += w.prob * v;
    }
    return total / mass;
  }

  // Firm 2 of type theta2 after firm 1 did nothing; firm 1's type is drawn
  // from the posterior b1.
  Rational Firm2Value(int theta2, bool acquire,
                      const std::vector<World>& worlds) const {
    Rational total = 0, mass = 0;
    for (const World& w : worlds) {
      if (w.theta2 != theta2) continue;
      const Rational lam1 = w.theta1 == kH ? lambda_ : 1 - lambda_;
      const Rational post1 = w.theta1 == kH ? b1_ : 1 - b1_;
      if (lam1 == 0) continue;
      const Rational weight = w.prob / lam1 * post1;
      mass += weight;
      Rational v;
      if (acquire) {
        v = p_.pi_bar(TypeOf(theta2)) - p_.pi_E +
            Play(History::kFirm2Employs, w).payoff2;
      } else {
        v = p_.pi_F + Play(History::kNone, w).payoff2;
      }
      total += weight * v;
    }
    return total / mass;
  }

 private:
  // P(High | did nothing) under a strategy. Off path (both types act), the
  // mover is taken to be Low: a High match strictly prefers to acquihire.
  Rational PosteriorHigh(const std::array<bool, 2>& acts) const {
    const Rational ph = acts[kH] ? Rational(0) : lambda_;
    const Rational pl = acts[kL] ? Rational(0) : 1 - lambda_;
    if (ph + pl == 0) return 0;
    return ph / (ph + pl);
  }

  // After a layoff the other firm (current type `now`) may hire.
  void Settle(int now, bool hirer_is_firm1, Period2& out) const {
    if (Hires(now)) {
      const Rational own = p_.pi_bar(TypeOf(now)) - p_.pi_E;
      const Rational other = p_.pi_under(TypeOf(now));
      out.payoff1 = hirer_is_firm1 ? own : other;
      out.payoff2 = hirer_is_firm1 ? other : own;
    } else {
      out.payoff1 = p_.pi_F;
      out.payoff2 = p_.pi_F;
      out.exited = out.laid_off;
    }
  }

  const ProfitProfile& p_;
  Rational lambda_;
  ShockDistribution dist_;
  LaborStrategies s_;
  Rational b1_ = 0;
  Rational b2_ = 0;
};

// Realized path of one world under fixed strategies.
struct Path {
  bool hired = false;
  bool laid_off = false;
  bool exited = false;
};

Path Resolve(const LaborGame& game, const World& w) {
  const LaborStrategies& s = game.strategies();
  History h = History::kNone;
  if (s.firm1[w.theta1]) {
    h = History::kFirm1Employs;
  } else if (s.firm2[w.theta2]) {
    h = History::kFirm2Employs;
  }
  Path out;
  out.hired = h != History::kNone;
  if (out.hired) {
    const Period2 p2 = game.Play(h, w);
    out.laid_off = p2.laid_off;
    out.exited = p2.exited;
  }
  return out;
}

void RequireLaborProfile(const ProfitProfile& p) {
  const ValidationReport report = validate_baseline(p);
  for (const AssumptionCheck& c : report.checks) {
    if (c.name == "A1(i)" && !c.passed) {
      throw ValidationError("assumptions", "A1(i) fails: " + c.rendered);
    }
  }
  if (p.pi_E < 0) throw ValidationError("pi_E", "pi_E must be >= 0");
}

struct Solved {
  LaborGame game;
  ExactLabor exact;
};

}  // namespace

void ValidateShockParams(const ShockParams& params) {
  RequireOpenUnit(params.delta, "delta");
  RequireOpenUnit(params.gamma, "gamma");
  if (params.r < 0 || params.r > 1) {
    throw ValidationError("r", "r = " + FormatSig(params.r) +
                                   " must lie in [0,1]");
  }
}

const Rational& ShockDistribution::P(Shock s1, Shock s2) const {
  if (s1 == Shock::kDowngrade) return s2 == Shock::kDowngrade ? p_DD : p_DN;
  return s2 == Shock::kDowngrade ? p_ND : p_NN;
}

Rational ShockDistribution::Conditional(Shock own, Shock other) const {
  // The table is symmetric, so the own shock can sit in either slot.
  const Rational marginal = P(own, Shock::kDowngrade) + P(own, Shock::kNone);
  return P(own, other) / marginal;
}

ShockDistribution shock_distribution(const Rational& gamma, const Rational& r) {
  RequireOpenUnit(gamma, "gamma");
  if (r < 0 || r > 1) {
    throw ValidationError("r", "r = " + FormatSig(r) + " must lie in [0,1]");
  }
  ShockDistribution d;
  d.p_DD = r * gamma * (1 - gamma) + gamma * gamma;
  d.p_DN = (1 - r) * gamma * (1 - gamma);
  d.p_ND = (1 - r) * gamma * (1 - gamma);
  d.p_NN = r * gamma * (1 - gamma) + (1 - gamma) * (1 - gamma);
  return d;
}

LaborOutcome benchmark_rates(const Rational& lambda, const ShockParams& params) {
  RequireLambdaOpen(lambda);
  ValidateShockParams(params);
  const Rational& d = params.delta;
  const Rational& g = params.gamma;
  const Rational hire = 2 * lambda - lambda * lambda;
  LaborOutcome out;
  out.hire_rate = hire;
  out.layoff_rate = d * hire * g;
  out.exit_rate =
      d * (hire - lambda * lambda * (1 - params.r) * (1 - g)) * g;
  return out;
}

std::string ToString(LaborCase c) {
  switch (c) {
    case LaborCase::kCase1: return "Case1";
    case LaborCase::kCase2: return "Case2";
    case LaborCase::kCase3: return "Case3";
    case LaborCase::kNoHoarding: return "NoHoarding";
  }
  return "?";
}

PeriodThresholds hoarding_thresholds(const ProfitProfile& profile,
                                     const ShockParams& params,
                                     const Rational& lambda) {
  RequireLambdaOpen(lambda);
  ValidateShockParams(params);
  const Rational la = *lambda_A(profile).value;  // A1 makes it finite
  const Rational& d = params.delta;
  const Rational& g = params.gamma;
  const Rational& r = params.r;
  PeriodThresholds t;
  t.l1 = la * 2 / (2 - g * d);
  t.l2 = la * (2 - d * g) / (2 - d * g - (1 - r) * (1 - g) * d * g);
  t.l3 = la;
  t.mu_D = lambda * (1 - r) * (1 - g);
  t.mu_N = lambda * (1 - g * (1 - r));
  if (t.mu_D > la) {
    t.labor_case = LaborCase::kCase1;
  } else if (t.mu_N > la) {
    t.labor_case = LaborCase::kCase2;
  } else if (lambda >= la) {
    t.labor_case = LaborCase::kCase3;
  } else {
    t.labor_case = LaborCase::kNoHoarding;
  }
  return t;
}

HoardingRates hoarding_rates(const ProfitProfile& p, const ShockParams& params,
                             const Rational& lambda) {
  const PeriodThresholds t = hoarding_thresholds(p, params, lambda);
  const Rational& d = params.delta;
  const Rational& g = params.gamma;
  const Rational& r = params.r;
  HoardingRates out;
  out.labor_case = t.labor_case;

  const Rational net = p.pi_bar_L - p.pi_E;
  const Rational loss = p.pi_F - p.pi_under_H;
  out.period1.nothing =
      lambda * (2 - g * d) * (p.pi_under_H - p.pi_F) + 2 * p.pi_F;
  switch (t.labor_case) {
    case LaborCase::kCase1:
      out.period1.formula_case = LaborCase::kCase1;
      out.period1.acquihire = 2 * net;
      break;
    case LaborCase::kCase2:
      out.period1.formula_case = LaborCase::kCase2;
      out.period1.acquihire = net * (2 - d * g) -
                              d * g * lambda * (1 - r) * (1 - g) * loss +
                              d * g * p.pi_F;
      break;
    default:
      out.period1.formula_case = LaborCase::kCase3;
      out.period1.acquihire =
          net * (2 - d) - d * lambda * (1 - g) * loss + d * p.pi_F;
      break;
  }

  const LaborOutcome bench = benchmark_rates(lambda, params);
  switch (t.labor_case) {
    case LaborCase::kCase1:
      out.rates.hire_rate = 1;
      out.rates.layoff_rate = 0;
      break;
    case LaborCase::kCase2:
      out.rates.hire_rate = 1;
      out.rates.layoff_rate = d * g;
      break;
    case LaborCase::kCase3:
      out.rates.hire_rate = 1;
      out.rates.layoff_rate = d * (1 - lambda * (1 - g));
      break;
    case LaborCase::kNoHoarding:
      out.rates.hire_rate = bench.hire_rate;
      out.rates.layoff_rate = bench.layoff_rate;
      break;
  }
  out.rates.exit_rate = enumerate_exact(p, params, lambda).exit_rate;
  return out;
}

bool prop3_check(const Rational& lambda, const Rational& lambda_A,
                 const Rational& gamma, const Rational& r) {
  RequireLambdaOpen(lambda);
  const Rational a = lambda_A / lambda;
  const Rational b = (1 - lambda) / lambda;
  return (a < b ? a : b) > (1 - r) * (1 - gamma);
}

namespace {

Solved Solve(const ProfitProfile& profile, const ShockParams& params,
             const Rational& lambda) {
  RequireLambdaOpen(lambda);
  ValidateShockParams(params);
  RequireLaborProfile(profile);
  const std::vector<World> worlds = Worlds(lambda, params);
  LaborGame game(profile, params, lambda);

  // Search the 16 pure period-1 strategy pairs for mutual best responses,
  // High-acquires-first order so the usual strategies come first.
  for (int code = 0; code < 16; ++code) {
    LaborStrategies s;
    s.firm1 = {(code & 1) == 0, (code & 2) != 0};
    s.firm2 = {(code & 4) == 0, (code & 8) != 0};
    game.SetStrategies(s);
    ExactLabor ex;
    bool ok = true;
    for (int t = 0; t < 2 && ok; ++t) {
      ex.firm1_acquire_value[t] = game.Firm1Value(t, true, worlds);
      ex.firm1_nothing_value[t] = game.Firm1Value(t, false, worlds);
      const bool buy = ex.firm1_acquire_value[t] >= ex.firm1_nothing_value[t];
      ok = buy == s.firm1[t];
      if (!ok) break;
      const Rational a2 = game.Firm2Value(t, true, worlds);
      const Rational n2 = game.Firm2Value(t, false, worlds);
      ok = (a2 >= n2) == s.firm2[t];
    }
    if (!ok) continue;
    ex.strategies = s;
    for (const World& w : worlds) {
      const Path path = Resolve(game, w);
      if (path.hired) ex.rates.hire_rate += w.prob;
      if (path.laid_off) ex.rates.layoff_rate += w.prob;
      if (path.exited) ex.rates.exit_rate += w.prob;
    }
    return Solved{game, ex};
  }
  throw std::runtime_error("labor game: no consistent period-1 strategies");
}

}  // namespace

ExactLabor enumerate_labor(const ProfitProfile& profile,
                           const ShockParams& params, const Rational& lambda) {
  return Solve(profile, params, lambda).exact;
}

LaborOutcome enumerate_exact(const ProfitProfile& profile,
                             const ShockParams& params, const Rational& lambda) {
  return enumerate_labor(profile, params, lambda).rates;
}

SimulationResult simulate(const ProfitProfile& profile,
                          const ShockParams& params, const Rational& lambda,
                          long trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("trials", "trials must be >= 1");
  const Solved solved = Solve(profile, params, lambda);
  const std::vector<World> worlds = Worlds(lambda, params);

  // Outcome and cumulative probability per world; sampled by inversion.
  std::vector<Path> paths;
  std::vector<double> cdf;
  double acc = 0;
  for (const World& w : worlds) {
    paths.push_back(Resolve(solved.game, w));
    acc += w.prob_d;
    cdf.push_back(acc);
  }

  long hires = 0, layoffs = 0, exits = 0;
  for (long start = 0, batch = 0; start < trials;
       start += kSimulationBatch, ++batch) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch),
                      static_cast<std::uint32_t>(batch >> 32)};
    std::mt19937_64 engine(seq);
    const long end = std::min(trials, start + kSimulationBatch);
    for (long i = start; i < end; ++i) {
      // 53 random bits scaled to [0, acc); portable across standard libraries.
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53 * acc;
      size_t k = 0;
      while (k + 1 < cdf.size() && u >= cdf[k]) ++k;
      hires += paths[k].hired;
      layoffs += paths[k].laid_off;
      exits += paths[k].exited;
    }
  }

  SimulationResult out;
  out.trials = trials;
  const double n = static_cast<double>(trials);
  auto se = [n](double p) { return std::sqrt(p * (1 - p) / n); };
  out.hire_rate = hires / n;
  out.layoff_rate = layoffs / n;
  out.exit_rate = exits / n;
  out.hire_se = se(out.hire_rate);
  out.layoff_se = se(out.layoff_rate);
  out.exit_se = se(out.exit_rate);
  return out;
}

}  // namespace acquihire
