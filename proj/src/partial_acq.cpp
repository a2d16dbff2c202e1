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

#include "acquihire/partial_acq.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "acquihire/conventions.hpp"

namespace acquihire {
namespace {

// s^e, exact for integer e.
Rational PowShare(const Rational& s, const Rational& e) {
  if (s == 0) return 0;
  if (s == 1) return 1;
  if (e.get_den() == 1 && e > 0 && e <= 64) {
    return Pow(s, static_cast<unsigned>(e.get_num().get_ui()));
  }
  return FromDouble(std::pow(s.get_d(), e.get_d()));
}

void RequireShare(const Rational& s, const char* what) {
  if (s < 0 || s > 1) {
    throw ValidationError(what, std::string(what) + " = " + FormatSig(s) +
                                    " must lie in [0,1]");
  }
}

// Linear interpolation of column `col` through rows sorted by s.
Rational Interpolate(const std::vector<CurveRow>& rows, const Rational& s,
                     Rational CurveRow::*col) {
  for (size_t i = 1; i < rows.size(); ++i) {
    if (s <= rows[i].s) {
      const CurveRow& a = rows[i - 1];
      const CurveRow& b = rows[i];
      const Rational t = (s - a.s) / (b.s - a.s);
      return a.*col + t * (b.*col - a.*col);
    }
  }
  return rows.back().*col;
}

void CheckCurvesMatch(const ProfitProfile& p, const OwnershipCurves& c) {
  if (c.v(0) != p.pi_E) {
    throw ValidationError("curves.v0",
                          "v(0) = " + FormatSig(c.v(0)) +
                              " must equal pi_E = " + FormatSig(p.pi_E));
  }
}

struct Bracket {
  Rational lo;  // condition fails (or lo == hi)
  Rational hi;  // condition holds
};

// Smallest s in [start, 1] with f(s) >= 0 for nondecreasing f.
std::optional<Bracket> FindRoot(const std::function<Rational(const Rational&)>& f,
                                const Rational& start, const char* what) {
  Rational prev = f(start);
  for (int k = 1; k <= 64; ++k) {
    const Rational s = start + (1 - start) * Frac(k, 64);
    Rational cur = f(s);
    if (cur < prev) {
      throw ValidationError("curves", std::string(what) +
                                          " condition is not monotone near s = " +
                                          FormatSig(s));
    }
    prev = std::move(cur);
  }
  if (f(start) >= 0) return Bracket{start, start};
  if (f(1) < 0) return std::nullopt;
  const Rational tol(1, 1000000000000L);
  Rational lo = start, hi = 1;
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (f(mid) >= 0) {
      hi = std::move(mid);
    } else {
      lo = std::move(mid);
    }
  }
  return Bracket{lo, hi};
}

struct Brackets {
  std::optional<Bracket> s_hat, s_L, s_H;
};

Brackets ComputeBrackets(const ProfitProfile& p, const OwnershipCurves& c) {
  RequireBaseline(p);
  CheckCurvesMatch(p, c);
  Brackets b;
  b.s_hat = FindRoot(
      [&](const Rational& s) { return Rational(p.pi_bar_L - c.v(s) - p.pi_F); },
      0, "s_hat");
  if (b.s_hat) {
    b.s_L = FindRoot(
        [&](const Rational& s) {
          return Rational(c.beta(s) * (p.pi_bar_L - p.pi_F - c.v(s)) -
                          (p.pi_F - p.pi_under_L));
        },
        b.s_hat->hi, "s_L");
  }
  b.s_H = FindRoot(
      [&](const Rational& s) {
        return Rational(c.beta(s) * (p.pi_bar_H - p.pi_F - c.v(s)) -
                        (p.pi_F - p.pi_under_H));
      },
      0, "s_H");
  return b;
}

PartialThresholds FromBrackets(const Brackets& b) {
  PartialThresholds t;
  if (b.s_hat) t.s_hat = b.s_hat->hi;
  if (b.s_L) t.s_L = b.s_L->hi;
  if (b.s_H) t.s_H = b.s_H->hi;
  auto key = [](const std::optional<Rational>& x) {
    return x ? *x : Rational(2);
  };
  if (key(t.s_H) <= key(t.s_hat)) {
    t.partial_case = PartialCase::kCase1;
  } else if (key(t.s_H) <= key(t.s_L)) {
    t.partial_case = PartialCase::kCase2;
  } else {
    t.partial_case = PartialCase::kCase3;
  }
  return t;
}

// Firm 1's payoff against one rival type's response, net of its own
// investment cost (so Delta(s) is included).
Rational Firm1Against(Firm2Response r, MatchType rival, const Rational& beta,
                      const Rational& delta, const ProfitProfile& p) {
  if (r == Firm2Response::kEntrepreneurOnly) {
    return beta * p.pi_F + (1 - beta) * p.pi_under(rival) + delta;
  }
  return p.pi_F + delta;
}

struct InvestRow {
  Rational s;
  Firm2Response low;
  Firm2Response high;
  Rational against_low;
  Rational against_high;
  Rational beta;

  Rational Value(const Rational& lambda) const {
    return (1 - lambda) * against_low + lambda * against_high;
  }
};

InvestRow MakeRow(const ProfitProfile& p, const OwnershipCurves& c,
                  const Rational& s) {
  InvestRow r;
  r.s = s;
  r.low = firm2_best_response(MatchType::kLow, s, p, c);
  r.high = firm2_best_response(MatchType::kHigh, s, p, c);
  r.beta = c.beta(s);
  const Rational delta = c.delta(s);
  r.against_low = Firm1Against(r.low, MatchType::kLow, r.beta, delta, p);
  r.against_high = Firm1Against(r.high, MatchType::kHigh, r.beta, delta, p);
  return r;
}

std::vector<InvestRow> BuildTable(const ProfitProfile& p,
                                  const OwnershipCurves& c,
                                  const std::set<Rational>& shares) {
  std::vector<InvestRow> rows;
  rows.reserve(shares.size());
  for (const Rational& s : shares) rows.push_back(MakeRow(p, c, s));
  return rows;
}

struct Choice {
  Action action = Action::kNothing;
  std::optional<InvestRow> invest;
  Rational invest_value;
};

// Golden-section search on [lo, hi] (lo itself is never evaluated) for
// the largest payoff; returns the best row seen. The payoff need not be
// unimodal, so this only ever improves on the grid.
void Refine(const ProfitProfile& p, const OwnershipCurves& c,
            const Rational& lambda, double lo, double hi, Choice& best) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  auto eval = [&](double x) {
    InvestRow row = MakeRow(p, c, FromDouble(x));
    Rational v = row.Value(lambda);
    if (v > best.invest_value) {
      best.invest = row;
      best.invest_value = v;
    }
    return v;
  };
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  Rational f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = eval(x2);
    }
  }
}

Choice Choose(const ProfitProfile& p, const OwnershipCurves& c,
              const std::vector<InvestRow>& table, const Rational& nothing,
              const Rational& acquihire, const Rational& lambda) {
  Choice out;
  std::vector<Rational> values;
  values.reserve(table.size());
  for (const InvestRow& r : table) values.push_back(r.Value(lambda));
  for (size_t i = 0; i < table.size(); ++i) {
    // Ascending s, so strict improvement keeps the smaller stake on ties.
    if (!out.invest || values[i] > out.invest_value) {
      out.invest = table[i];
      out.invest_value = values[i];
    }
  }
  // Local maxima of the grid, best first; refine the top three between
  // their neighbours.
  std::vector<size_t> peaks;
  for (size_t i = 0; i < table.size(); ++i) {
    const bool left = i == 0 || values[i] >= values[i - 1];
    const bool right = i + 1 == table.size() || values[i] >= values[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](size_t a, size_t b) {
    return values[a] > values[b];
  });
  if (peaks.size() > 3) peaks.resize(3);
  for (size_t i : peaks) {
    const double lo = i == 0 ? 0.0 : table[i - 1].s.get_d();
    const double hi = i + 1 == table.size() ? 1.0 : table[i + 1].s.get_d();
    if (hi > lo) Refine(p, c, lambda, lo, hi, out);
  }

  const bool acquire = conventions::kAcquihireAtThreshold
                           ? acquihire >= nothing
                           : acquihire > nothing;
  if (acquire) {
    out.action = (out.invest && out.invest_value >= acquihire)
                     ? Action::kInvest
                     : Action::kAcquihire;
  } else {
    out.action = (out.invest && out.invest_value > nothing) ? Action::kInvest
                                                            : Action::kNothing;
  }
  return out;
}

void AddOutcome(std::map<std::string, Rational>& dist, const std::string& key,
                const Rational& p) {
  dist[key] += p;
}

}  // namespace

OwnershipCurves OwnershipCurves::Power(Rational v0, Rational v1,
                                       Rational kappa, Rational omega,
                                       Rational eta) {
  if (!(v0 > v1)) {
    throw ValidationError("curves.v1", "A5 needs v0 > v1");
  }
  if (!(kappa > 0)) throw ValidationError("curves.kappa", "kappa must be > 0");
  if (!(eta > 0)) throw ValidationError("curves.eta", "eta must be > 0");
  RequireShare(omega, "curves.omega");
  OwnershipCurves c;
  c.value_ = Value::kPower;
  c.blocking_ = Blocking::kPower;
  c.v0_ = std::move(v0);
  c.v1_ = std::move(v1);
  c.kappa_ = std::move(kappa);
  c.omega_ = std::move(omega);
  c.eta_ = std::move(eta);
  return c;
}

OwnershipCurves OwnershipCurves::PowerNoBlocking(Rational v0, Rational v1,
                                                 Rational kappa,
                                                 Rational omega) {
  OwnershipCurves c = Power(std::move(v0), std::move(v1), std::move(kappa),
                            std::move(omega), 1);
  c.blocking_ = Blocking::kNone;
  return c;
}

OwnershipCurves OwnershipCurves::Table(std::vector<CurveRow> rows,
                                       Rational omega, bool blocking) {
  RequireShare(omega, "curves.omega");
  if (rows.size() < 2) {
    throw ValidationError("curves.table", "need at least two rows");
  }
  if (rows.front().s != 0 || rows.back().s != 1) {
    throw ValidationError("curves.table", "rows must span s = 0 to s = 1");
  }
  for (size_t i = 1; i < rows.size(); ++i) {
    const std::string at = " at row " + std::to_string(i);
    if (!(rows[i].s > rows[i - 1].s)) {
      throw ValidationError("curves.table", "s not strictly increasing" + at);
    }
    if (!(rows[i].v < rows[i - 1].v)) {
      throw ValidationError("curves.table", "v not strictly decreasing" + at);
    }
    if (blocking && rows[i].beta < rows[i - 1].beta) {
      throw ValidationError("curves.table", "beta decreasing" + at);
    }
  }
  if (blocking && (rows.front().beta != 0 || rows.back().beta != 1)) {
    throw ValidationError("curves.table", "beta must run from 0 to 1");
  }
  OwnershipCurves c;
  c.value_ = Value::kTable;
  c.blocking_ = blocking ? Blocking::kTable : Blocking::kNone;
  c.omega_ = std::move(omega);
  c.rows_ = std::move(rows);
  return c;
}

Rational OwnershipCurves::v(const Rational& s) const {
  RequireShare(s, "s");
  if (value_ == Value::kTable) return Interpolate(rows_, s, &CurveRow::v);
  return v0_ - (v0_ - v1_) * PowShare(s, kappa_);
}

Rational OwnershipCurves::beta(const Rational& s) const {
  RequireShare(s, "s");
  switch (blocking_) {
    case Blocking::kNone:
      return 0;
    case Blocking::kTable:
      return Interpolate(rows_, s, &CurveRow::beta);
    case Blocking::kPower:
      break;
  }
  return PowShare(s, eta_);
}

std::string OwnershipCurves::Describe() const {
  std::string out;
  if (value_ == Value::kPower) {
    out = "v(s) = " + FormatSig(v0_) + " - " + FormatSig(v0_ - v1_) +
          " s^" + FormatSig(kappa_);
  } else {
    out = "v(s) tabulated (" + std::to_string(rows_.size()) + " rows)";
  }
  out += ", omega = " + FormatSig(omega_);
  switch (blocking_) {
    case Blocking::kNone:
      out += ", no blocking";
      break;
    case Blocking::kTable:
      out += ", beta tabulated";
      break;
    case Blocking::kPower:
      out += ", beta(s) = s^" + FormatSig(eta_);
      break;
  }
  return out;
}

std::string ToString(Firm2Response r) {
  switch (r) {
    case Firm2Response::kNothing:
      return "N";
    case Firm2Response::kEntrepreneurOnly:
      return "E";
    case Firm2Response::kBoth:
      return "B";
  }
  return "?";
}

std::string ToString(PartialCase c) {
  switch (c) {
    case PartialCase::kCase1:
      return "Case1";
    case PartialCase::kCase2:
      return "Case2";
    case PartialCase::kCase3:
      return "Case3";
  }
  return "?";
}

std::string ToString(PartialRegime r) {
  switch (r) {
    case PartialRegime::kNE:
      return "NE";
    case PartialRegime::kNB:
      return "NB";
    case PartialRegime::kEB:
      return "EB";
    case PartialRegime::kBB:
      return "BB";
    case PartialRegime::kEE:
      return "EE";
    case PartialRegime::kBE:
      return "BE";
    case PartialRegime::kAcquihire:
      return "Acquihire";
    case PartialRegime::kNothing:
      return "Nothing";
  }
  return "?";
}

PartialRegime RegimeOf(Firm2Response low, Firm2Response high) {
  if (high == Firm2Response::kNothing) {
    throw ValidationError("regime", "a high-match rival never does nothing");
  }
  const bool hb = high == Firm2Response::kBoth;
  switch (low) {
    case Firm2Response::kNothing:
      return hb ? PartialRegime::kNB : PartialRegime::kNE;
    case Firm2Response::kEntrepreneurOnly:
      return hb ? PartialRegime::kEB : PartialRegime::kEE;
    case Firm2Response::kBoth:
      return hb ? PartialRegime::kBB : PartialRegime::kBE;
  }
  return PartialRegime::kNE;
}

Rational minimum_bid(const Rational& s1, const OwnershipCurves& c) {
  if (!(s1 > 0 && s1 <= 1)) {
    throw ValidationError("s1", "s1 = " + FormatSig(s1) +
                                    " must lie in (0,1]");
  }
  return c.v(0) - (1 - s1) * c.pi_E(s1) - c.w(s1);
}

PartialThresholds compute_thresholds(const ProfitProfile& profile,
                                     const OwnershipCurves& curves) {
  return FromBrackets(ComputeBrackets(profile, curves));
}

Firm2Payoffs firm2_payoffs(MatchType type, const Rational& s1,
                           const ProfitProfile& p, const OwnershipCurves& c) {
  const Rational net = p.pi_bar(type) - c.v(s1);
  const Rational beta = c.beta(s1);
  Firm2Payoffs out;
  out.nothing = p.pi_F;
  out.both = net - p.pi_F + p.pi_under(type);
  out.entrepreneur_only = beta * p.pi_F + (1 - beta) * net;
  return out;
}

Firm2Response firm2_best_response(MatchType type, const Rational& s1,
                                  const ProfitProfile& p,
                                  const OwnershipCurves& c) {
  const Firm2Payoffs u = firm2_payoffs(type, s1, p, c);
  // E against N is decided on the undivided condition pi_bar - v >= pi_F,
  // so a bid that is blocked for sure (beta = 1) does not beat N on a tie.
  const bool entrepreneur_ok = p.pi_bar(type) - c.v(s1) >= p.pi_F;
  const Rational& fallback = entrepreneur_ok ? u.entrepreneur_only : u.nothing;
  const Firm2Response fallback_r = entrepreneur_ok
                                       ? Firm2Response::kEntrepreneurOnly
                                       : Firm2Response::kNothing;
  const bool both = conventions::kRivalPrefersActiveBid ? u.both >= fallback
                                                        : u.both > fallback;
  return both ? Firm2Response::kBoth : fallback_r;
}

RegimePayoff firm1_payoff(PartialRegime regime, const Rational& s,
                          const Rational& lambda, const ProfitProfile& p,
                          const OwnershipCurves& c) {
  MatchPrior check(lambda);
  RegimePayoff out;
  out.regime = regime;
  if (regime == PartialRegime::kNothing) {
    out.value = lambda * p.pi_under_H + (1 - lambda) * p.pi_F;
    return out;
  }
  if (regime == PartialRegime::kAcquihire) {
    out.value = p.pi_bar_L - c.pi_E(0) - c.w(0);
    return out;
  }
  if (!(s > 0 && s <= 1)) {
    throw ValidationError("s", "investment share must lie in (0,1]");
  }
  const PartialRegime actual =
      RegimeOf(firm2_best_response(MatchType::kLow, s, p, c),
               firm2_best_response(MatchType::kHigh, s, p, c));
  if (actual != regime) {
    throw ValidationError("regime", "regime " + ToString(regime) +
                                        " is inconsistent with s = " +
                                        FormatSig(s) + " (rival plays " +
                                        ToString(actual) + ")");
  }
  const Rational b = c.beta(s);
  const Rational d = c.delta(s);
  const Rational& pf = p.pi_F;
  const Rational& ph = p.pi_under_H;
  const Rational& pl = p.pi_under_L;
  out.delta_s = d;
  switch (regime) {
    case PartialRegime::kNE:
    case PartialRegime::kBE:
      out.value = lambda * (1 - b) * ph + (1 - lambda * (1 - b)) * pf + d;
      break;
    case PartialRegime::kNB:
    case PartialRegime::kBB:
      out.value = pf + d;
      break;
    case PartialRegime::kEB:
      out.value = (1 - (1 - lambda) * (1 - b)) * pf +
                  (1 - lambda) * (1 - b) * pl + d;
      break;
    case PartialRegime::kEE:
      out.value = b * pf + (1 - b) * (lambda * ph + (1 - lambda) * pl) + d;
      break;
    default:
      break;
  }
  return out;
}

PartialResult solve_partial(const ProfitProfile& profile,
                            const OwnershipCurves& curves,
                            const Rational& lambda, int grid_resolution,
                            int structure_points) {
  if (grid_resolution < 2) {
    throw ValidationError("grid_resolution", "grid_resolution must be >= 2");
  }
  if (structure_points < 1) {
    throw ValidationError("structure_points", "structure_points must be >= 1");
  }
  MatchPrior check(lambda);
  const Brackets brackets = ComputeBrackets(profile, curves);

  std::set<Rational> shares;
  for (int k = 1; k < grid_resolution; ++k) {
    shares.insert(Frac(k, grid_resolution - 1));
  }
  for (const auto* b : {&brackets.s_hat, &brackets.s_L, &brackets.s_H}) {
    if (!*b) continue;
    for (const Rational* s : {&(*b)->lo, &(*b)->hi}) {
      if (*s > 0) shares.insert(*s);
    }
  }
  const std::vector<InvestRow> table = BuildTable(profile, curves, shares);

  PartialResult out;
  out.thresholds = FromBrackets(brackets);
  out.acquihire_value = profile.pi_bar_L - curves.v(0);
  auto nothing_at = [&](const Rational& l) {
    return Rational(l * profile.pi_under_H + (1 - l) * profile.pi_F);
  };
  out.nothing_value = nothing_at(lambda);

  const Choice choice = Choose(profile, curves, table, out.nothing_value,
                               out.acquihire_value, lambda);
  if (choice.invest) {
    out.best_invest = InvestOption{choice.invest->s,
                                   RegimeOf(choice.invest->low,
                                            choice.invest->high),
                                   choice.invest_value};
  }

  EquilibriumReport& r = out.report;
  r.variant = "partial";
  r.lambda = lambda;
  r.bid = profile.pi_E;
  r.thresholds.lambda_A = lambda_A(profile);
  StrategyEntry low{1, MatchType::kLow, choice.action, std::nullopt, false};
  if (choice.action == Action::kInvest) low.share = choice.invest->s;
  r.strategy = {{1, MatchType::kHigh, Action::kAcquihire, std::nullopt, false},
                low,
                {2, MatchType::kHigh, Action::kAcquihire, std::nullopt, false},
                {2, MatchType::kLow, Action::kNothing, std::nullopt, false}};

  const Rational mu = 1 - lambda;
  auto& dist = r.outcome_distribution;
  for (const char* key : {kOutcomeNone, kOutcomeFirm1High, kOutcomeFirm1Low,
                          kOutcomeFirm2High, kOutcomeFirm2Low}) {
    dist[key] = 0;
  }
  dist[kOutcomeFirm1High] = lambda;
  switch (choice.action) {
    case Action::kAcquihire:
      dist[kOutcomeFirm1Low] = mu;
      break;
    case Action::kNothing:
      dist[kOutcomeFirm2High] = mu * lambda;
      dist[kOutcomeNone] = mu * mu;
      break;
    case Action::kInvest: {
      const InvestRow& row = *choice.invest;
      out.response_low = row.low;
      out.response_high = row.high;
      r.strategy[2].action = Action::kAcquihire;
      r.strategy[3].action = row.low == Firm2Response::kNothing
                                 ? Action::kNothing
                                 : Action::kAcquihire;
      dist[kOutcomeFirm1Invest] = 0;
      for (auto [type, resp, prob] :
           {std::tuple{MatchType::kLow, row.low, Rational(mu * mu)},
            std::tuple{MatchType::kHigh, row.high, Rational(mu * lambda)}}) {
        const char* taken = type == MatchType::kHigh ? kOutcomeFirm2High
                                                     : kOutcomeFirm2Low;
        switch (resp) {
          case Firm2Response::kNothing:
            AddOutcome(dist, kOutcomeFirm1Invest, prob);
            break;
          case Firm2Response::kBoth:
            AddOutcome(dist, taken, prob);
            break;
          case Firm2Response::kEntrepreneurOnly:
            AddOutcome(dist, kOutcomeFirm1Invest, prob * row.beta);
            AddOutcome(dist, taken, prob * (1 - row.beta));
            break;
        }
      }
      break;
    }
    default:
      break;
  }

  for (int k = 1; k <= structure_points; ++k) {
    const Rational l = Frac(k, structure_points + 1);
    const Choice c = Choose(profile, curves, table, nothing_at(l),
                            out.acquihire_value, l);
    std::optional<Rational> share;
    if (c.action == Action::kInvest) share = c.invest->s;
    if (out.structure.empty() || out.structure.back().action != c.action ||
        out.structure.back().share != share) {
      out.structure.push_back(LambdaSegment{l, c.action, share});
    }
  }
  return out;
}

}  // namespace acquihire
