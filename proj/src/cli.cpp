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

#include "acquihire/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "acquihire/cournot.hpp"
#include "acquihire/equilibrium.hpp"
#include "acquihire/labor_dynamics.hpp"
#include "acquihire/oracle.hpp"
#include "acquihire/partial_acq.hpp"

namespace acquihire {
namespace {

using acquihire::ToJson;

constexpr int kOnsetLimit = 200;

[[noreturn]] void ConfigFail(const RunConfig& cfg, const std::string& field,
                             const std::string& message) {
  int line = cfg.Line(field);
  if (line == 0) line = cfg.Line("variant");
  throw ConfigError(cfg.source, line, field, message);
}

// One sweep point. tau and sigma carry the configured value unless they
// are the swept parameter.
struct Point {
  Rational lambda;
  std::optional<Rational> tau;
  std::optional<Rational> sigma;
};

std::vector<Point> Points(const RunConfig& cfg) {
  std::vector<Point> out;
  if (!cfg.sweep) {
    out.push_back({cfg.lambda, cfg.tau, cfg.sigma});
    return out;
  }
  for (const Rational& v : cfg.sweep->values) {
    Point p{cfg.lambda, cfg.tau, cfg.sigma};
    if (cfg.sweep->parameter == "lambda") p.lambda = v;
    if (cfg.sweep->parameter == "tau") p.tau = v;
    if (cfg.sweep->parameter == "sigma") p.sigma = v;
    out.push_back(p);
  }
  return out;
}

void RequireA1(const ProfitProfile& p, const std::string& what = "profile") {
  const ValidationReport r = validate_baseline(p);
  if (r.ok()) return;
  std::string msg = what + " violates " + r.Failures();
  for (const auto& c : r.checks) {
    if (!c.passed) msg += "; " + c.rendered;
  }
  throw ValidationError("assumptions", msg);
}

// Profile of the configured primitives, A1 checked. Not for dominant.
ProfitProfile CheckedProfile(const RunConfig& cfg) {
  const ProfitProfile p = cfg.Profile();
  RequireA1(p);
  return p;
}

DominantPair CheckedPair(const RunConfig& cfg) {
  const DominantPair pair = proportional_pair(*cfg.dominant);
  RequireA1(pair.dominant, "dominant profile");
  RequireA1(pair.challenger, "challenger profile");
  return pair;
}

const CournotParams& NFirmMarket(const RunConfig& cfg) {
  if (!cfg.cournot) ConfigFail(cfg, "cournot", "variant nfirm needs cournot primitives");
  return *cfg.cournot;
}

Json ToJson(const ProfitProfile& p) {
  Json j;
  j["pi_F"] = ToJson(p.pi_F);
  j["pi_bar_H"] = ToJson(p.pi_bar_H);
  j["pi_bar_L"] = ToJson(p.pi_bar_L);
  j["pi_under_H"] = ToJson(p.pi_under_H);
  j["pi_under_L"] = ToJson(p.pi_under_L);
  j["pi_E"] = ToJson(p.pi_E);
  return j;
}

Json ToJson(const SurplusProfile& s) {
  Json j;
  j["cs_F"] = ToJson(s.cs_F);
  j["cs_E"] = ToJson(s.cs_E);
  j["cs_H"] = ToJson(s.cs_H);
  j["cs_L"] = ToJson(s.cs_L);
  return j;
}

Json ToJson(const GainProfile& g) {
  Json j;
  j["g_bar_H"] = ToJson(g.g_bar_H);
  j["g_bar_L"] = ToJson(g.g_bar_L);
  j["g_under_H"] = ToJson(g.g_under_H);
  j["g_under_L"] = ToJson(g.g_under_L);
  j["tau"] = ToJson(g.tau);
  j["pi_F"] = ToJson(g.pi_F);
  j["pi_E"] = ToJson(g.pi_E);
  return j;
}

Json ToJson(const NFirmCondition& c) {
  Json j;
  j["n"] = c.n;
  j["lhs"] = ToJson(c.lhs);
  j["rhs"] = ToJson(c.rhs);
  j["verdict"] = c.verdict();
  j["hoarding"] = c.hoarding;
  j["inefficient"] = c.inefficient;
  j["necessary"] = c.necessary;
  return j;
}

Json ToJson(const std::optional<Rational>& q) {
  return q ? ToJson(*q) : Json(nullptr);
}

GainProfile Gains(const RunConfig& cfg, const ProfitProfile& p, const Point& pt) {
  if (!pt.tau) ConfigFail(cfg, "tau", "variant tech needs tau");
  const GainProfile g = ToGains(p, *pt.tau);
  RequireGains(g);
  return g;
}

EquilibriumReport SolveAt(const RunConfig& cfg, const Point& pt) {
  switch (cfg.variant) {
    case Variant::kBaseline:
    case Variant::kCs:
      return solve_baseline(CheckedProfile(cfg), pt.lambda, cfg.Surplus());
    case Variant::kTech: {
      const ProfitProfile p = CheckedProfile(cfg);
      return solve_tech(Gains(cfg, p, pt), pt.lambda);
    }
    case Variant::kPartial:
      return solve_partial(CheckedProfile(cfg), *cfg.curves, pt.lambda,
                           cfg.grid_resolution)
          .report;
    default:
      ConfigFail(cfg, "variant", "variant " + ToString(cfg.variant) +
                                     " has no equilibrium report; use solve");
  }
}

Field ActionField(Action a) { return ToString(a); }

// ---- sweep rows -------------------------------------------------------

RecordSet CsSweep(const RunConfig& cfg, const std::vector<Point>& pts) {
  const ProfitProfile p = CheckedProfile(cfg);
  const std::optional<SurplusProfile> s = cfg.Surplus();
  RecordSet r;
  if (!s) {
    if (cfg.variant == Variant::kCs) {
      ConfigFail(cfg, "surplus", "variant cs needs a surplus section or cournot.cs_E");
    }
    const Threshold la = lambda_A(p);
    r.header = {"lambda", "lambda_A", "low_action", "hoarding", "bid", "p_no_acquihire"};
    r.rows = ParallelMap<std::vector<Field>>(
        pts.size(), cfg.threads, [&](std::size_t i) -> std::vector<Field> {
          const EquilibriumReport rep = solve_baseline(p, pts[i].lambda);
          const auto none = rep.outcome_distribution.find(kOutcomeNone);
          const Rational p_none = none == rep.outcome_distribution.end() ? Rational(0) : none->second;
          const Action low = rep.Entry(1, MatchType::kLow).action;
          return {pts[i].lambda, OptionalField(la.value), ActionField(low),
                  low != Action::kNothing, rep.bid, p_none};
        });
    return r;
  }
  RequireSurplus(*s);
  r.header = {"lambda", "cs_allowed", "cs_banned", "cs_onlyH", "regime", "hoarding"};
  r.rows = ParallelMap<std::vector<Field>>(
      pts.size(), cfg.threads, [&](std::size_t i) -> std::vector<Field> {
        const Rational& l = pts[i].lambda;
        const CsRegimeResult c = cs_regime(p, *s, l);
        return {l, c.cs_allowed, c.cs_banned, c.cs_only_high, ToString(c.regime),
                LowFirstMoverAcquihires(p, l)};
      });
  return r;
}

RecordSet TechSweep(const RunConfig& cfg, const std::vector<Point>& pts) {
  const ProfitProfile p = CheckedProfile(cfg);
  RecordSet r;
  r.header = {"lambda", "tau", "lambda_A_tau", "sale_price", "low_action",
              "sells_to_high_only", "hoarding"};
  r.rows = ParallelMap<std::vector<Field>>(
      pts.size(), cfg.threads, [&](std::size_t i) -> std::vector<Field> {
        const GainProfile g = Gains(cfg, p, pts[i]);
        const TechThreshold t = lambda_A_tau(g);
        const EquilibriumReport rep = solve_tech(g, pts[i].lambda);
        const StrategyEntry& low = rep.Entry(1, MatchType::kLow);
        return {pts[i].lambda,
                *pts[i].tau,
                OptionalField(t.threshold.value),
                t.sale_price,
                ActionField(low.action),
                low.sells_to_high_only,
                low.action != Action::kNothing};
      });
  return r;
}

std::vector<Field> PartialRow(const PartialResult& pr, const Rational& lambda) {
  const StrategyEntry& low = pr.report.Entry(1, MatchType::kLow);
  Field regime = ToString(PartialRegime::kNothing);
  Field value = pr.nothing_value;
  if (low.action == Action::kAcquihire) {
    regime = ToString(PartialRegime::kAcquihire);
    value = pr.acquihire_value;
  } else if (low.action == Action::kInvest && pr.best_invest) {
    regime = ToString(pr.best_invest->regime);
    value = pr.best_invest->value;
  }
  auto resp = [](const std::optional<Firm2Response>& r) -> Field {
    if (r) return ToString(*r);
    return std::monostate{};
  };
  return {lambda,
          ActionField(low.action),
          OptionalField(low.share),
          regime,
          value,
          pr.nothing_value,
          pr.acquihire_value,
          resp(pr.response_low),
          resp(pr.response_high)};
}

const std::vector<std::string>& PartialHeader() {
  static const std::vector<std::string> kHeader = {
      "lambda",          "action",       "share",        "regime",       "value",
      "nothing_value",   "acquihire_value", "response_low", "response_high"};
  return kHeader;
}

RecordSet PartialSweep(const RunConfig& cfg, const std::vector<Point>& pts) {
  const ProfitProfile p = CheckedProfile(cfg);
  RecordSet r;
  r.header = PartialHeader();
  r.rows = ParallelMap<std::vector<Field>>(
      pts.size(), cfg.threads, [&](std::size_t i) -> std::vector<Field> {
        return PartialRow(solve_partial(p, *cfg.curves, pts[i].lambda,
                                        cfg.grid_resolution, 1),
                          pts[i].lambda);
      });
  return r;
}

std::vector<Field> LaborRow(const ProfitProfile& p, const ShockParams& s,
                            const Rational& lambda) {
  const HoardingRates h = hoarding_rates(p, s, lambda);
  const LaborOutcome b = benchmark_rates(lambda, s);
  const Threshold la = lambda_A(p);
  const bool prop3 = la.value && prop3_check(lambda, *la.value, s.gamma, s.r);
  return {ToString(h.labor_case), h.rates.hire_rate, h.rates.layoff_rate,
          h.rates.exit_rate,      b.hire_rate,       b.layoff_rate,
          b.exit_rate,            prop3};
}

const std::vector<std::string>& LaborHeader() {
  static const std::vector<std::string> kHeader = {
      "case", "hire", "layoff", "exit", "bench_hire", "bench_layoff", "bench_exit", "prop3"};
  return kHeader;
}

RecordSet LaborSweep(const RunConfig& cfg, const std::vector<Point>& pts,
                     bool with_lambda) {
  const ProfitProfile p = CheckedProfile(cfg);
  ValidateShockParams(*cfg.shocks);
  RecordSet r;
  if (with_lambda) r.header.push_back("lambda");
  for (const auto& h : LaborHeader()) r.header.push_back(h);
  r.rows = ParallelMap<std::vector<Field>>(
      pts.size(), cfg.threads, [&](std::size_t i) -> std::vector<Field> {
        std::vector<Field> row;
        if (with_lambda) row.push_back(pts[i].lambda);
        for (auto& f : LaborRow(p, *cfg.shocks, pts[i].lambda)) row.push_back(std::move(f));
        return row;
      });
  return r;
}

RecordSet DominantSweep(const RunConfig& cfg, const std::vector<Point>& pts) {
  const DominantPair pair = CheckedPair(cfg);
  const DominantThresholds t = dominant_thresholds(pair);
  RecordSet r;
  r.header = {"lambda",           "lambda_D",  "lambda_C",  "dominant_hoards",
              "challenger_hoards", "sufficient", "challenger_higher"};
  for (const Point& pt : pts) {
    r.rows.push_back({pt.lambda, OptionalField(t.lambda_D.value),
                      OptionalField(t.lambda_C.value), t.lambda_D.Admits(pt.lambda),
                      t.lambda_C.Admits(pt.lambda), t.sufficient, t.challenger_higher});
  }
  return r;
}

RecordSet NFirmSweep(const RunConfig& cfg, const std::vector<Point>& pts) {
  const CournotParams& m = NFirmMarket(cfg);
  const ProfitProfile p = CheckedProfile(cfg);
  RecordSet r;
  r.header = {"lambda", "n", "lhs", "rhs", "verdict", "inefficient", "necessary"};
  for (const Point& pt : pts) {
    const NFirmCondition c = nfirm_hoarding_condition(m.n, p, pt.lambda);
    r.rows.push_back({pt.lambda, static_cast<long>(c.n), c.lhs, c.rhs, c.verdict(),
                      c.inefficient, c.necessary});
  }
  return r;
}

RecordSet UncertainSweep(const RunConfig& cfg, const std::vector<Point>& pts) {
  const ProfitProfile p = CheckedProfile(cfg);
  const Threshold lp = lambda_prime(p);
  const Threshold la = lambda_A(p);
  RecordSet r;
  r.header = {"lambda", "lambda_prime", "lambda_A", "all_acquire"};
  for (const Point& pt : pts) {
    r.rows.push_back({pt.lambda, OptionalField(lp.value), OptionalField(la.value),
                      lp.Admits(pt.lambda)});
  }
  return r;
}

RecordSet SurplusShareSweep(const RunConfig& cfg, const std::vector<Point>& pts) {
  const ProfitProfile p = CheckedProfile(cfg);
  RecordSet r;
  r.header = {"lambda", "sigma", "lambda_AS", "feasible", "feasibility_bound", "hoarding"};
  for (const Point& pt : pts) {
    if (!pt.sigma) ConfigFail(cfg, "sigma", "variant surplus_share needs sigma");
    const SurplusShareResult s = lambda_AS(p, *pt.sigma);
    r.rows.push_back({pt.lambda, *pt.sigma, OptionalField(s.threshold.value), s.feasible,
                      s.feasibility_bound, s.threshold.Admits(pt.lambda)});
  }
  return r;
}

// ---- oracle -------------------------------------------------------------

bool LowActs(const PBEResult& r, int k) {
  return r.ActionAt(k, "f1[theta1=L]") != "Nothing";
}

void Expect(AgreementReport& rep, const std::string& field, bool closed, bool oracle) {
  if (closed != oracle) rep.Add(field, Cell(closed), Cell(oracle));
}

Json OracleGameSummary(const PBEResult& r) {
  Json j;
  j["info_sets"] = r.info_sets.size();
  j["profiles_checked"] = r.profiles_checked;
  j["equilibria_found"] = r.equilibria_found;
  j["unique_firm1_behavior"] = r.uniqueness_of_firm1_behavior;
  j["unique_passive_firm1_behavior"] = r.unique_passive_firm1_behavior;
  j["unordered"] = r.unordered;
  return j;
}

// Threshold-style certification for games without a full closed-form
// report: the oracle's Low first mover acts iff the closed form admits.
AgreementReport CertifyDecision(const PBEResult& r, bool closed, Json& games) {
  AgreementReport rep;
  games.push_back(OracleGameSummary(r));
  const int k = r.FirstPassive();
  if (k < 0) {
    rep.Add("equilibria", "passive equilibrium", "none");
    return rep;
  }
  if (!r.unique_passive_firm1_behavior) {
    rep.Add("firm1_behavior", "unique", "not unique among passive equilibria");
  }
  Expect(rep, "low_acquihires", closed, LowActs(r, k));
  return rep;
}

Json OraclePoint(const RunConfig& cfg, const Point& pt) {
  Json j;
  j["lambda"] = ToJson(pt.lambda);
  if (cfg.variant == Variant::kTech) j["tau"] = ToJson(pt.tau);
  if (cfg.variant == Variant::kSurplusShare) j["sigma"] = ToJson(pt.sigma);
  AgreementReport rep;
  Json games = Json::array();
  switch (cfg.variant) {
    case Variant::kBaseline:
    case Variant::kCs: {
      const ProfitProfile p = CheckedProfile(cfg);
      const GameSpec g = BuildBaselineGame(p, pt.lambda);
      const PBEResult r = solve_pbe(g);
      games.push_back(OracleGameSummary(r));
      rep = certify(solve_baseline(p, pt.lambda), g, r);
      break;
    }
    case Variant::kTech: {
      const ProfitProfile p = CheckedProfile(cfg);
      const GainProfile gains = Gains(cfg, p, pt);
      const GameSpec g = BuildTechGame(gains, pt.lambda);
      const PBEResult r = solve_pbe(g);
      games.push_back(OracleGameSummary(r));
      rep = certify(solve_tech(gains, pt.lambda), g, r);
      break;
    }
    case Variant::kPartial: {
      const ProfitProfile p = CheckedProfile(cfg);
      const PartialResult closed =
          solve_partial(p, *cfg.curves, pt.lambda, cfg.grid_resolution, 1);
      std::vector<Rational> shares;
      if (closed.best_invest) shares.push_back(closed.best_invest->share);
      const GameSpec g = BuildPartialGame(p, *cfg.curves, pt.lambda, shares);
      const PBEResult r = solve_pbe(g);
      games.push_back(OracleGameSummary(r));
      rep = certify_partial(closed, g, r);
      break;
    }
    case Variant::kLabor: {
      const ProfitProfile p = CheckedProfile(cfg);
      const LaborCertification c = certify_labor(p, *cfg.shocks, pt.lambda);
      rep = c.agreement;
      Json s;
      s["equilibria"] = c.equilibria;
      s["passive"] = c.passive;
      s["oracle_rates"] = ToJson(c.oracle_rates);
      games.push_back(s);
      break;
    }
    case Variant::kDominant: {
      const DominantPair pair = CheckedPair(cfg);
      const DominantThresholds t = dominant_thresholds(pair);
      const std::pair<const char*, const ProfitProfile*> sides[] = {
          {"dominant", &pair.dominant}, {"challenger", &pair.challenger}};
      for (const auto& [name, prof] : sides) {
        const GameSpec g = BuildBaselineGame(*prof, pt.lambda);
        const PBEResult r = solve_pbe(g);
        games.push_back(OracleGameSummary(r));
        rep.Merge(certify(solve_baseline(*prof, pt.lambda), g, r), std::string(name) + ".");
        const Threshold& th = std::string(name) == "dominant" ? t.lambda_D : t.lambda_C;
        const int k = r.FirstPassive();
        if (k >= 0) Expect(rep, std::string(name) + ".threshold", th.Admits(pt.lambda), LowActs(r, k));
      }
      break;
    }
    case Variant::kNFirm: {
      const CournotParams& m = NFirmMarket(cfg);
      const ProfitProfile p = CheckedProfile(cfg);
      const PBEResult r = solve_pbe(BuildNFirmGame(m.n, p, pt.lambda));
      rep = CertifyDecision(r, nfirm_hoarding_condition(m.n, p, pt.lambda).hoarding, games);
      break;
    }
    case Variant::kUncertainOrder: {
      const ProfitProfile p = CheckedProfile(cfg);
      const PBEResult r = solve_pbe(BuildUncertainOrderGame(p, pt.lambda));
      games.push_back(OracleGameSummary(r));
      bool all = false;
      for (std::size_t k = 0; k < r.equilibria.size() && !all; ++k) {
        bool every = true;
        for (const char* n :
             {"f1[theta1=H]", "f1[theta1=L]", "f2[theta2=H]", "f2[theta2=L]"}) {
          every = every && r.ActionAt(static_cast<int>(k), n) == "Acquihire";
        }
        all = every;
      }
      Expect(rep, "all_acquire_equilibrium", lambda_prime(p).Admits(pt.lambda), all);
      break;
    }
    case Variant::kSurplusShare: {
      const ProfitProfile p = CheckedProfile(cfg);
      if (!pt.sigma) ConfigFail(cfg, "sigma", "variant surplus_share needs sigma");
      const PBEResult r = solve_pbe(BuildSurplusShareGame(p, *pt.sigma, pt.lambda));
      rep = CertifyDecision(r, lambda_AS(p, *pt.sigma).threshold.Admits(pt.lambda), games);
      break;
    }
  }
  j["agree"] = rep.agree;
  j["diffs"] = rep.diffs;
  j["games"] = games;
  return j;
}

// ---- output routing -------------------------------------------------------

std::string ResolvePath(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv(kOutputDirEnv);
  const std::filesystem::path p(path);
  if (dir && *dir && p.is_relative()) return (std::filesystem::path(dir) / p).string();
  return path;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

struct Common {
  std::string config;
  std::string output;
  std::string format;
  int threads = 0;
};

void AddCommon(CLI::App* sub, Common& c, bool needs_config = true) {
  auto* opt = sub->add_option("config", c.config, "YAML run configuration");
  if (needs_config) opt->required();
  sub->add_option("-o,--output", c.output, "output file (overrides output.path)");
  sub->add_option("--format", c.format, "csv or json (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", c.threads, "worker threads for sweeps")
      ->check(CLI::Range(1, 256));
}

RunConfig Load(const Common& c) {
  RunConfig cfg = LoadConfig(c.config);
  if (!c.output.empty()) cfg.output.path = c.output;
  if (!c.format.empty()) cfg.output.format = c.format;
  if (c.threads > 0) cfg.threads = c.threads;
  return cfg;
}

std::string Format(const RunConfig& cfg, const char* fallback) {
  return cfg.output.format.empty() ? fallback : cfg.output.format;
}

void Emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  const std::string path = ResolvePath(cfg.output.path);
  if (path.empty()) {
    out << text << std::flush;
  } else {
    WriteOutput(path, text);
  }
}

std::string Render(const RecordSet& r, const std::string& format, const Json& meta) {
  if (format == "csv") return ToCsv(ToTable(r));
  Json j = meta;
  const Json body = ToJson(r);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return Dump(j);
}

Json Meta(const RunConfig& cfg) {
  Json j;
  j["variant"] = ToString(cfg.variant);
  if (cfg.sweep) j["parameter"] = cfg.sweep->parameter;
  return j;
}

int LineFor(const RunConfig* cfg, const std::string& field) {
  if (!cfg) return 0;
  if (int l = cfg->Line(field)) return l;
  for (const auto& [key, line] : cfg->lines) {
    const std::size_t dot = key.rfind('.');
    if (dot != std::string::npos && key.substr(dot + 1) == field) return line;
  }
  for (const char* section : {"profile", "cournot", "dominant"}) {
    if (int l = cfg->Line(section)) return l;
  }
  return 0;
}

}  // namespace

Json ValidateDocument(const RunConfig& cfg, bool* ok) {
  bool all = true;
  Json j;
  j["variant"] = ToString(cfg.variant);
  auto add = [&](const char* name, const ValidationReport& r) {
    j[name] = ToJson(r);
    all = all && r.ok();
  };
  if (cfg.variant == Variant::kDominant) {
    const DominantPair pair = proportional_pair(*cfg.dominant);
    j["dominant_profile"] = ToJson(pair.dominant);
    j["challenger_profile"] = ToJson(pair.challenger);
    add("dominant", validate_baseline(pair.dominant));
    add("challenger", validate_baseline(pair.challenger));
  } else {
    const ProfitProfile p = cfg.Profile();
    j["profile"] = ToJson(p);
    add("baseline", validate_baseline(p));
    if (const auto s = cfg.Surplus()) {
      j["surplus_profile"] = ToJson(*s);
      add("surplus", validate_surplus(*s));
    }
    if (cfg.variant == Variant::kTech) {
      const Rational tau = cfg.tau.value_or(cfg.sweep ? cfg.sweep->values.front() : Rational(0));
      add("gains", validate_gains(ToGains(p, tau)));
    }
  }
  if (cfg.shocks) {
    Json s;
    try {
      ValidateShockParams(*cfg.shocks);
      s["ok"] = true;
    } catch (const ValidationError& e) {
      s["ok"] = false;
      s["field"] = e.field();
      s["message"] = e.what();
      all = false;
    }
    j["shocks"] = s;
  }
  j["ok"] = all;
  if (ok) *ok = all;
  return j;
}

EquilibriumReport SolveReport(const RunConfig& cfg) {
  return SolveAt(cfg, Point{cfg.lambda, cfg.tau, cfg.sigma});
}

Json SolveDocument(const RunConfig& cfg) {
  const Point pt{cfg.lambda, cfg.tau, cfg.sigma};
  Json j;
  j["variant"] = ToString(cfg.variant);
  j["lambda"] = ToJson(cfg.lambda);
  switch (cfg.variant) {
    case Variant::kBaseline:
    case Variant::kCs: {
      const ProfitProfile p = CheckedProfile(cfg);
      j["profile"] = ToJson(p);
      const auto s = cfg.Surplus();
      if (s) {
        RequireSurplus(*s);
        j["surplus_profile"] = ToJson(*s);
        const CsRegimeResult c = cs_regime(p, *s, cfg.lambda);
        Json cs;
        cs["regime"] = ToString(c.regime);
        cs["harmful"] = c.harmful;
        cs["cs_allowed"] = ToJson(c.cs_allowed);
        cs["cs_banned"] = ToJson(c.cs_banned);
        cs["cs_only_high"] = ToJson(c.cs_only_high);
        cs["lambda_A"] = ToJson(c.lambda_A);
        cs["lambda_CS"] = ToJson(c.lambda_CS);
        j["cs_regime"] = cs;
      } else if (cfg.variant == Variant::kCs) {
        ConfigFail(cfg, "surplus", "variant cs needs a surplus section or cournot.cs_E");
      }
      j["report"] = ToJson(solve_baseline(p, cfg.lambda, s));
      break;
    }
    case Variant::kTech: {
      const ProfitProfile p = CheckedProfile(cfg);
      const GainProfile g = Gains(cfg, p, pt);
      const TechThreshold t = lambda_A_tau(g);
      j["gains"] = ToJson(g);
      j["lambda_A_tau"] = ToJson(t.threshold);
      j["sale_price"] = ToJson(t.sale_price);
      j["report"] = ToJson(solve_tech(g, cfg.lambda));
      break;
    }
    case Variant::kPartial:
      return PartialDocument(cfg);
    case Variant::kLabor:
      return LaborDocument(cfg);
    case Variant::kDominant: {
      const DominantPair pair = CheckedPair(cfg);
      const DominantThresholds t = dominant_thresholds(pair);
      j["dominant_profile"] = ToJson(pair.dominant);
      j["challenger_profile"] = ToJson(pair.challenger);
      j["lambda_D"] = ToJson(t.lambda_D);
      j["lambda_C"] = ToJson(t.lambda_C);
      j["loss_condition"] = t.loss_condition;
      j["gain_condition"] = t.gain_condition;
      j["sufficient"] = t.sufficient;
      j["challenger_higher"] = t.challenger_higher;
      j["dominant_hoards"] = t.lambda_D.Admits(cfg.lambda);
      j["challenger_hoards"] = t.lambda_C.Admits(cfg.lambda);
      break;
    }
    case Variant::kNFirm: {
      const CournotParams& m = NFirmMarket(cfg);
      const ProfitProfile p = CheckedProfile(cfg);
      j["n"] = m.n;
      j["profile"] = ToJson(p);
      Json conds = Json::array();
      std::vector<int> sizes = {2, 3};
      if (m.n > 3) sizes.push_back(m.n);
      for (int n : sizes) {
        CournotParams mk = m;
        mk.n = n;
        conds.push_back(ToJson(
            nfirm_hoarding_condition(n, nfirm_profit_profile(mk, cfg.cournot_pi_E), cfg.lambda)));
      }
      j["conditions"] = conds;
      const std::optional<int> onset =
          nfirm_no_hoarding_onset(m, cfg.cournot_pi_E, cfg.lambda, kOnsetLimit);
      j["no_hoarding_onset"] = onset ? Json(*onset) : Json(nullptr);
      j["onset_search_limit"] = kOnsetLimit;
      break;
    }
    case Variant::kUncertainOrder: {
      const ProfitProfile p = CheckedProfile(cfg);
      const Threshold lp = lambda_prime(p);
      j["lambda_prime"] = ToJson(lp);
      j["lambda_A"] = ToJson(lambda_A(p));
      j["all_acquire"] = lp.Admits(cfg.lambda);
      break;
    }
    case Variant::kSurplusShare: {
      const ProfitProfile p = CheckedProfile(cfg);
      if (!pt.sigma) ConfigFail(cfg, "sigma", "variant surplus_share needs sigma");
      const SurplusShareResult s = lambda_AS(p, *pt.sigma);
      j["sigma"] = ToJson(*pt.sigma);
      j["lambda_AS"] = ToJson(s.threshold);
      j["feasible"] = s.feasible;
      j["feasibility_bound"] = ToJson(s.feasibility_bound);
      j["hoarding"] = s.threshold.Admits(cfg.lambda);
      break;
    }
  }
  return j;
}

RecordSet SweepRecords(const RunConfig& cfg) {
  const std::vector<Point> pts = Points(cfg);
  switch (cfg.variant) {
    case Variant::kBaseline:
    case Variant::kCs:
      return CsSweep(cfg, pts);
    case Variant::kTech:
      return TechSweep(cfg, pts);
    case Variant::kPartial:
      return PartialSweep(cfg, pts);
    case Variant::kLabor:
      return LaborSweep(cfg, pts, true);
    case Variant::kDominant:
      return DominantSweep(cfg, pts);
    case Variant::kNFirm:
      return NFirmSweep(cfg, pts);
    case Variant::kUncertainOrder:
      return UncertainSweep(cfg, pts);
    case Variant::kSurplusShare:
      return SurplusShareSweep(cfg, pts);
  }
  return {};
}

RecordSet LaborRecords(const RunConfig& cfg) {
  if (cfg.variant != Variant::kLabor) ConfigFail(cfg, "variant", "the labor subcommand needs variant labor");
  return LaborSweep(cfg, Points(cfg), false);
}

Json LaborDocument(const RunConfig& cfg) {
  if (cfg.variant != Variant::kLabor) ConfigFail(cfg, "variant", "the labor subcommand needs variant labor");
  const ProfitProfile p = CheckedProfile(cfg);
  const ShockParams& s = *cfg.shocks;
  ValidateShockParams(s);
  const std::vector<Point> pts = Points(cfg);
  Json j;
  j["variant"] = "labor";
  j["profile"] = ToJson(p);
  Json shocks;
  shocks["delta"] = ToJson(s.delta);
  shocks["gamma"] = ToJson(s.gamma);
  shocks["r"] = ToJson(s.r);
  j["shocks"] = shocks;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  const std::vector<Json> rows = ParallelMap<Json>(pts.size(), cfg.threads, [&](std::size_t i) {
    const Rational& l = pts[i].lambda;
    const PeriodThresholds th = hoarding_thresholds(p, s, l);
    const HoardingRates h = hoarding_rates(p, s, l);
    const LaborOutcome exact = enumerate_exact(p, s, l);
    const SimulationResult mc = simulate(p, s, l, cfg.trials, cfg.seed);
    const Threshold la = lambda_A(p);
    Json r;
    r["lambda"] = ToJson(l);
    r["case"] = ToString(h.labor_case);
    Json t;
    t["l1"] = ToJson(th.l1);
    t["l2"] = ToJson(th.l2);
    t["l3"] = ToJson(th.l3);
    t["mu_D"] = ToJson(th.mu_D);
    t["mu_N"] = ToJson(th.mu_N);
    r["thresholds"] = t;
    r["hoarding"] = ToJson(h.rates);
    r["enumeration"] = ToJson(exact);
    r["benchmark"] = ToJson(benchmark_rates(l, s));
    r["prop3"] = la.value && prop3_check(l, *la.value, s.gamma, s.r);
    Json p1;
    p1["nothing"] = ToJson(h.period1.nothing);
    p1["acquihire"] = ToJson(h.period1.acquihire);
    p1["formula_case"] = ToString(h.period1.formula_case);
    r["period1"] = p1;
    Json m;
    m["trials"] = mc.trials;
    m["hire"] = mc.hire_rate;
    m["layoff"] = mc.layoff_rate;
    m["exit"] = mc.exit_rate;
    m["hire_se"] = mc.hire_se;
    m["layoff_se"] = mc.layoff_se;
    m["exit_se"] = mc.exit_se;
    auto within = [](double x, const Rational& e, double se) {
      return std::abs(x - ToDouble(e)) <= 3 * se + 1e-12;
    };
    m["within_3se"] = within(mc.hire_rate, exact.hire_rate, mc.hire_se) &&
                      within(mc.layoff_rate, exact.layoff_rate, mc.layoff_se) &&
                      within(mc.exit_rate, exact.exit_rate, mc.exit_se);
    r["monte_carlo"] = m;
    return r;
  });
  j["points"] = rows;
  return j;
}

Json PartialDocument(const RunConfig& cfg) {
  if (cfg.variant != Variant::kPartial) {
    ConfigFail(cfg, "variant", "the partial subcommand needs variant partial");
  }
  const ProfitProfile p = CheckedProfile(cfg);
  const PartialResult pr = solve_partial(p, *cfg.curves, cfg.lambda, cfg.grid_resolution);
  Json j;
  j["variant"] = "partial";
  j["lambda"] = ToJson(cfg.lambda);
  j["curves"] = cfg.curves->Describe();
  Json th;
  th["s_hat"] = ToJson(pr.thresholds.s_hat);
  th["s_L"] = ToJson(pr.thresholds.s_L);
  th["s_H"] = ToJson(pr.thresholds.s_H);
  th["case"] = ToString(pr.thresholds.partial_case);
  j["thresholds"] = th;
  j["nothing_value"] = ToJson(pr.nothing_value);
  j["acquihire_value"] = ToJson(pr.acquihire_value);
  if (pr.best_invest) {
    Json b;
    b["share"] = ToJson(pr.best_invest->share);
    b["regime"] = ToString(pr.best_invest->regime);
    b["value"] = ToJson(pr.best_invest->value);
    j["best_invest"] = b;
  } else {
    j["best_invest"] = nullptr;
  }
  j["response_low"] = pr.response_low ? Json(ToString(*pr.response_low)) : Json(nullptr);
  j["response_high"] = pr.response_high ? Json(ToString(*pr.response_high)) : Json(nullptr);
  Json structure = Json::array();
  for (const auto& seg : pr.structure) {
    Json s;
    s["lambda_from"] = ToJson(seg.lambda_from);
    s["action"] = ToString(seg.action);
    s["share"] = ToJson(seg.share);
    structure.push_back(s);
  }
  j["structure"] = structure;
  j["report"] = ToJson(pr.report);
  return j;
}

RecordSet PartialRecords(const RunConfig& cfg) {
  if (cfg.variant != Variant::kPartial) {
    ConfigFail(cfg, "variant", "the partial subcommand needs variant partial");
  }
  return PartialSweep(cfg, Points(cfg));
}

Json OracleDocument(const RunConfig& cfg, bool* agree) {
  const std::vector<Point> pts = Points(cfg);
  const std::vector<Json> rows = ParallelMap<Json>(
      pts.size(), cfg.threads, [&](std::size_t i) { return OraclePoint(cfg, pts[i]); });
  bool all = true;
  long failures = 0;
  for (const Json& r : rows) {
    if (!r.at("agree").get<bool>()) {
      all = false;
      ++failures;
    }
  }
  Json j;
  j["variant"] = ToString(cfg.variant);
  j["agree"] = all;
  j["points_checked"] = rows.size();
  j["disagreements"] = failures;
  j["points"] = rows;
  if (agree) *agree = all;
  return j;
}

RecordSet Figure1Records(const Rational& cs_E) {
  const CournotParams m{Rational(10), Rational(5), Rational(3), Rational(2), Rational(1), 2};
  const DuopolyProfiles d = duopoly_profiles(m, Frac(9, 10), cs_E);
  RequireA1(d.profit);
  RequireSurplus(d.surplus);
  const Threshold la = lambda_A(d.profit);
  const Threshold lcs = lambda_CS(d.surplus);
  RecordSet r;
  r.header = {"lambda",   "cs_allowed", "cs_banned", "cs_onlyH", "regime", "hoarding",
              "lambda_A", "lambda_CS",  "cs_H",      "cs_L",     "cs_F_plus_E"};
  for (int k = 1; k <= 99; ++k) {
    const Rational l = Frac(k, 100);
    const CsRegimeResult c = cs_regime(d.profit, d.surplus, l);
    r.rows.push_back({l, c.cs_allowed, c.cs_banned, c.cs_only_high, ToString(c.regime),
                      LowFirstMoverAcquihires(d.profit, l), OptionalField(la.value),
                      OptionalField(lcs.value), d.surplus.cs_H, d.surplus.cs_L,
                      Rational(d.surplus.cs_F + d.surplus.cs_E)});
  }
  return r;
}

std::string Figure1FileName(const std::string& cs_E) {
  return "figure1_csE_" + cs_E + ".csv";
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Acquihire and talent hoarding models: closed forms, game oracle, sweeps."};
  app.name("acquihire");
  app.require_subcommand(1);

  Common validate, solve, sweep, labor, partial, oracle, report;
  AddCommon(app.add_subcommand("validate", "check the assumptions of the configured primitives"),
            validate);
  AddCommon(app.add_subcommand("solve", "variant solution at the configured lambda (JSON)"), solve);
  AddCommon(app.add_subcommand("sweep", "one row per sweep point (CSV by default)"), sweep);
  AddCommon(app.add_subcommand("labor", "two-period labor rates (CSV by default)"), labor);
  AddCommon(app.add_subcommand("partial", "partial acquisition solution (JSON by default)"),
            partial);
  AddCommon(app.add_subcommand("oracle", "certify closed forms against the game oracle"), oracle);
  CLI::App* report_cmd =
      app.add_subcommand("report", "equilibrium report (JSON, or field,value,exact CSV)");
  AddCommon(report_cmd, report, false);
  std::string convert;
  report_cmd->add_option("--convert", convert,
                         "convert a saved report between JSON and CSV instead of solving");
  CLI::App* fig = app.add_subcommand("figure1", "write the two duopoly curve files");
  std::string fig_dir;
  fig->add_option("-o,--out-dir", fig_dir, "directory for the CSV files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const RunConfig* current = nullptr;
  RunConfig cfg;
  try {
    if (fig->parsed()) {
      std::string dir = fig_dir;
      if (dir.empty()) {
        const char* env = std::getenv(kOutputDirEnv);
        dir = env && *env ? env : ".";
      }
      for (const std::string& share : Figure1Shares()) {
        const std::string path = (std::filesystem::path(dir) / Figure1FileName(share)).string();
        WriteOutput(path, ToCsv(ToTable(Figure1Records(ParseRational(share)))));
        out << path << "\n";
      }
      return kExitOk;
    }
    if (report_cmd->parsed() && !convert.empty()) {
      std::ifstream in(convert, std::ios::binary);
      if (!in) throw ConfigError(convert, 0, "convert", "cannot open file");
      std::ostringstream ss;
      ss << in.rdbuf();
      const std::string text = ss.str();
      const bool is_json = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                           text[text.find_first_not_of(" \t\r\n")] == '{';
      EquilibriumReport r;
      try {
        r = is_json ? ReportFromJson(Json::parse(text)) : ReportFromTable(ParseCsv(text));
      } catch (const Json::exception& e) {
        throw ConfigError(convert, 0, "convert", e.what());
      } catch (const std::exception& e) {
        throw ConfigError(convert, 0, "convert", e.what());
      }
      std::string format = report.format.empty() ? (is_json ? "csv" : "json") : report.format;
      RunConfig sink;
      sink.output.path = report.output;
      Emit(sink, format == "csv" ? ToCsv(ReportToTable(r)) : Dump(ToJson(r)), out);
      return kExitOk;
    }

    auto run = [&](const Common& c) -> const RunConfig& {
      if (c.config.empty()) throw ConfigError("<args>", 0, "config", "a config file is required");
      cfg = Load(c);
      current = &cfg;
      return cfg;
    };

    if (app.got_subcommand("validate")) {
      run(validate);
      bool ok = false;
      const Json doc = ValidateDocument(cfg, &ok);
      Emit(cfg, Dump(doc), out);
      if (!ok) {
        err << "error: " << cfg.source << ": assumptions: validation failed\n";
        return kExitConfig;
      }
      return kExitOk;
    }
    if (app.got_subcommand("solve")) {
      run(solve);
      if (Format(cfg, "json") == "csv") {
        Emit(cfg, ToCsv(ToTable(SweepRecords(cfg))), out);
      } else {
        Emit(cfg, Dump(SolveDocument(cfg)), out);
      }
      return kExitOk;
    }
    if (app.got_subcommand("sweep")) {
      run(sweep);
      Emit(cfg, Render(SweepRecords(cfg), Format(cfg, "csv"), Meta(cfg)), out);
      return kExitOk;
    }
    if (app.got_subcommand("labor")) {
      run(labor);
      if (Format(cfg, "csv") == "csv") {
        Emit(cfg, ToCsv(ToTable(LaborRecords(cfg))), out);
      } else {
        Emit(cfg, Dump(LaborDocument(cfg)), out);
      }
      return kExitOk;
    }
    if (app.got_subcommand("partial")) {
      run(partial);
      if (Format(cfg, "json") == "csv") {
        Emit(cfg, ToCsv(ToTable(PartialRecords(cfg))), out);
      } else {
        Emit(cfg, Dump(PartialDocument(cfg)), out);
      }
      return kExitOk;
    }
    if (app.got_subcommand("oracle")) {
      run(oracle);
      bool agree = false;
      const Json doc = OracleDocument(cfg, &agree);
      Emit(cfg, Dump(doc), out);
      if (!agree) {
        err << "error: " << cfg.source << ": certification failed at "
            << doc.at("disagreements").get<long>() << " point(s)\n";
        return kExitCertification;
      }
      return kExitOk;
    }
    if (report_cmd->parsed()) {
      run(report);
      const EquilibriumReport r = SolveReport(cfg);
      Emit(cfg, Format(cfg, "json") == "csv" ? ToCsv(ReportToTable(r)) : Dump(ToJson(r)), out);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    const int line = LineFor(current, e.field());
    err << "error: " << (current ? current->source : std::string("<config>"))
        << (line ? ":" + std::to_string(line) : "") << ": " << e.field() << ": " << e.what()
        << "\n";
    return kExitConfig;
  } catch (const CornerSolutionError& e) {
    err << "error: " << (current ? current->source : "") << ": cournot: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OracleSizeError& e) {
    err << "error: oracle: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace acquihire
