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

#include "acquihire/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace acquihire {
namespace {

const std::map<std::string, Variant>& Variants() {
  static const std::map<std::string, Variant> kMap = {
      {"baseline", Variant::kBaseline},
      {"cs", Variant::kCs},
      {"tech", Variant::kTech},
      {"partial", Variant::kPartial},
      {"labor", Variant::kLabor},
      {"dominant", Variant::kDominant},
      {"nfirm", Variant::kNFirm},
      {"uncertain_order", Variant::kUncertainOrder},
      {"surplus_share", Variant::kSurplusShare},
  };
  return kMap;
}

class Reader {
 public:
  Reader(RunConfig& cfg) : cfg_(cfg) {}

  [[noreturn]] void Fail(const YAML::Node& at, const std::string& field,
                         const std::string& message) const {
    const int line = at.IsDefined() && at.Mark().line >= 0 ? at.Mark().line + 1 : 0;
    throw ConfigError(cfg_.source, line, field, message);
  }

  // Checks the keys of a mapping and records their lines.
  void Keys(const YAML::Node& map, const std::string& prefix,
            const std::set<std::string>& allowed) {
    if (!map.IsMap()) Fail(map, prefix.empty() ? "config" : prefix, "expected a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      const std::string dotted = prefix.empty() ? key : prefix + "." + key;
      if (!allowed.count(key)) Fail(kv.first, dotted, "unknown key");
      cfg_.lines[dotted] = kv.first.Mark().line + 1;
    }
  }

  Rational Number(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) Fail(n, field, "expected a number");
    try {
      return ParseRational(n.Scalar());
    } catch (const std::invalid_argument&) {
      Fail(n, field, "not a number: '" + n.Scalar() + "'");
    }
  }

  Rational Required(const YAML::Node& map, const std::string& key,
                    const std::string& prefix) const {
    const std::string field = prefix + "." + key;
    if (!map[key]) Fail(map, field, "missing");
    return Number(map[key], field);
  }

  Rational Optional(const YAML::Node& map, const std::string& key,
                    const std::string& prefix, Rational fallback) const {
    if (!map[key]) return fallback;
    return Number(map[key], prefix + "." + key);
  }

  long Integer(const YAML::Node& n, const std::string& field) const {
    const Rational q = Number(n, field);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
      Fail(n, field, "expected an integer");
    }
    return q.get_num().get_si();
  }

  bool Bool(const YAML::Node& n, const std::string& field) const {
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      Fail(n, field, "expected true or false");
    }
  }

  std::string String(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) Fail(n, field, "expected a string");
    return n.Scalar();
  }

  void Profile(const YAML::Node& n) {
    Keys(n, "profile",
         {"pi_F", "pi_bar_H", "pi_bar_L", "pi_under_H", "pi_under_L", "pi_E"});
    cfg_.profile = ProfitProfile{
        Required(n, "pi_F", "profile"),       Required(n, "pi_bar_H", "profile"),
        Required(n, "pi_bar_L", "profile"),   Required(n, "pi_under_H", "profile"),
        Required(n, "pi_under_L", "profile"), Required(n, "pi_E", "profile")};
  }

  void Cournot(const YAML::Node& n) {
    Keys(n, "cournot", {"a", "b", "c", "H", "L", "n", "pi_E", "cs_E"});
    CournotParams p{Required(n, "a", "cournot"), Required(n, "b", "cournot"),
                    Required(n, "c", "cournot"), Required(n, "H", "cournot"),
                    Required(n, "L", "cournot"), 2};
    if (n["n"]) {
      const long firms = Integer(n["n"], "cournot.n");
      if (firms < 2 || firms > 100000) Fail(n["n"], "cournot.n", "must lie in [2, 100000]");
      p.n = static_cast<int>(firms);
    }
    cfg_.cournot = p;
    cfg_.cournot_pi_E = Required(n, "pi_E", "cournot");
    if (n["cs_E"]) cfg_.cournot_cs_E = Number(n["cs_E"], "cournot.cs_E");
  }

  void Dominant(const YAML::Node& n) {
    Keys(n, "dominant", {"pi_D", "pi_C", "mult_H", "mult_L", "mult_l", "mult_h", "pi_E"});
    cfg_.dominant = ProportionalSpec{
        Required(n, "pi_D", "dominant"),   Required(n, "pi_C", "dominant"),
        Required(n, "mult_H", "dominant"), Required(n, "mult_L", "dominant"),
        Required(n, "mult_l", "dominant"), Required(n, "mult_h", "dominant"),
        Required(n, "pi_E", "dominant")};
  }

  void Surplus(const YAML::Node& n) {
    Keys(n, "surplus", {"cs_F", "cs_E", "cs_H", "cs_L"});
    cfg_.surplus = SurplusProfile{.cs_F = Required(n, "cs_F", "surplus"),
                                  .cs_E = Required(n, "cs_E", "surplus"),
                                  .cs_L = Required(n, "cs_L", "surplus"),
                                  .cs_H = Required(n, "cs_H", "surplus")};
  }

  void Shocks(const YAML::Node& n) {
    Keys(n, "shocks", {"delta", "gamma", "r"});
    cfg_.shocks = ShockParams{Required(n, "delta", "shocks"),
                              Required(n, "gamma", "shocks"),
                              Required(n, "r", "shocks")};
  }

  void Curves(const YAML::Node& n) {
    Keys(n, "curves",
         {"family", "v0", "v1", "kappa", "omega", "eta", "blocking", "rows"});
    if (!n["family"]) Fail(n, "curves.family", "missing");
    const std::string family = String(n["family"], "curves.family");
    const Rational omega = Optional(n, "omega", "curves", 0);
    try {
      if (family == "power" || family == "power_no_blocking") {
        const Rational v0 = Required(n, "v0", "curves");
        const Rational v1 = Required(n, "v1", "curves");
        const Rational kappa = Optional(n, "kappa", "curves", 1);
        if (family == "power") {
          cfg_.curves = OwnershipCurves::Power(v0, v1, kappa, omega,
                                               Optional(n, "eta", "curves", 1));
        } else {
          cfg_.curves = OwnershipCurves::PowerNoBlocking(v0, v1, kappa, omega);
        }
      } else if (family == "table") {
        const YAML::Node rows = n["rows"];
        if (!rows || !rows.IsSequence()) Fail(n, "curves.rows", "expected a list of [s, v, beta]");
        std::vector<CurveRow> table;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const std::string field = "curves.rows[" + std::to_string(i) + "]";
          if (!rows[i].IsSequence() || rows[i].size() != 3) {
            Fail(rows[i], field, "expected [s, v, beta]");
          }
          table.push_back({Number(rows[i][0], field), Number(rows[i][1], field),
                           Number(rows[i][2], field)});
        }
        const bool blocking = n["blocking"] ? Bool(n["blocking"], "curves.blocking") : true;
        cfg_.curves = OwnershipCurves::Table(std::move(table), omega, blocking);
      } else {
        Fail(n["family"], "curves.family",
             "unknown family '" + family + "' (power, power_no_blocking, table)");
      }
    } catch (const ValidationError& e) {
      Fail(n, "curves." + e.field(), e.what());
    }
  }

  void Sweep(const YAML::Node& n) {
    Keys(n, "sweep", {"parameter", "from", "to", "points", "values"});
    GridSpec g;
    g.parameter = n["parameter"] ? String(n["parameter"], "sweep.parameter") : "lambda";
    if (g.parameter != "lambda" && g.parameter != "tau" && g.parameter != "sigma") {
      Fail(n["parameter"], "sweep.parameter", "must be lambda, tau or sigma");
    }
    if (n["values"]) {
      if (n["from"] || n["to"] || n["points"]) {
        Fail(n, "sweep", "give either values or from/to/points");
      }
      const YAML::Node v = n["values"];
      if (!v.IsSequence()) Fail(v, "sweep.values", "expected a list");
      for (std::size_t i = 0; i < v.size(); ++i) {
        g.values.push_back(Number(v[i], "sweep.values[" + std::to_string(i) + "]"));
      }
      // An explicit empty list is an empty sweep.
      if (g.values.size() == 1) Fail(v, "sweep.values", "need at least 2 points");
    } else {
      const Rational from = Required(n, "from", "sweep");
      const Rational to = Required(n, "to", "sweep");
      if (!n["points"]) Fail(n, "sweep.points", "missing");
      const long points = Integer(n["points"], "sweep.points");
      if (points < 2 || points > 1000000) {
        Fail(n["points"], "sweep.points", "must lie in [2, 1000000]");
      }
      for (long k = 0; k < points; ++k) {
        Rational x = from + (to - from) * Rational(k, points - 1);
        x.canonicalize();
        g.values.push_back(x);
      }
    }
    for (std::size_t i = 1; i < g.values.size(); ++i) {
      if (!(g.values[i] > g.values[i - 1])) {
        Fail(n, "sweep", "grid must be strictly increasing");
      }
    }
    cfg_.sweep = std::move(g);
  }

  void Output(const YAML::Node& n) {
    Keys(n, "output", {"path", "format"});
    if (n["path"]) cfg_.output.path = String(n["path"], "output.path");
    if (n["format"]) {
      cfg_.output.format = String(n["format"], "output.format");
    } else if (cfg_.output.path.size() >= 4 &&
               cfg_.output.path.substr(cfg_.output.path.size() - 4) == ".csv") {
      cfg_.output.format = "csv";
    } else if (cfg_.output.path.size() >= 5 &&
               cfg_.output.path.substr(cfg_.output.path.size() - 5) == ".json") {
      cfg_.output.format = "json";
    }
    if (!cfg_.output.format.empty() && cfg_.output.format != "csv" &&
        cfg_.output.format != "json") {
      Fail(n["format"], "output.format", "must be csv or json");
    }
  }

  void Root(const YAML::Node& root) {
    Keys(root, "",
         {"variant", "profile", "cournot", "dominant", "surplus", "lambda", "tau",
          "sigma", "curves", "shocks", "sweep", "seed", "trials",
          "grid_resolution", "threads", "output"});
    if (!root["variant"]) Fail(root, "variant", "missing");
    const std::string v = String(root["variant"], "variant");
    const auto it = Variants().find(v);
    if (it == Variants().end()) Fail(root["variant"], "variant", "unknown variant '" + v + "'");
    cfg_.variant = it->second;

    if (root["profile"]) Profile(root["profile"]);
    if (root["cournot"]) Cournot(root["cournot"]);
    if (root["dominant"]) Dominant(root["dominant"]);
    const int sources = !!cfg_.profile + !!cfg_.cournot + !!cfg_.dominant;
    if (sources != 1) {
      Fail(root, "primitives", "give exactly one of profile, cournot or dominant");
    }
    if ((cfg_.variant == Variant::kDominant) != cfg_.dominant.has_value()) {
      Fail(root, "dominant", "the dominant section goes with variant dominant only");
    }
    if (cfg_.cournot && cfg_.cournot->n != 2 && cfg_.variant != Variant::kNFirm) {
      Fail(root["cournot"], "cournot.n", "only variant nfirm takes n != 2");
    }
    if (root["surplus"]) Surplus(root["surplus"]);
    if (root["lambda"]) {
      cfg_.lambda = Number(root["lambda"], "lambda");
      if (!(cfg_.lambda > 0 && cfg_.lambda < 1)) {
        Fail(root["lambda"], "lambda", "must lie in (0,1), got " + root["lambda"].Scalar());
      }
    }
    if (root["tau"]) cfg_.tau = Number(root["tau"], "tau");
    if (root["sigma"]) cfg_.sigma = Number(root["sigma"], "sigma");
    if (root["curves"]) Curves(root["curves"]);
    if (root["shocks"]) Shocks(root["shocks"]);
    if (root["sweep"]) Sweep(root["sweep"]);
    if (root["seed"]) {
      const Rational s = Number(root["seed"], "seed");
      if (s.get_den() != 1 || s < 0 || !s.get_num().fits_ulong_p()) {
        Fail(root["seed"], "seed", "expected a non-negative integer");
      }
      cfg_.seed = s.get_num().get_ui();
    }
    if (root["trials"]) {
      cfg_.trials = Integer(root["trials"], "trials");
      if (cfg_.trials < 1) Fail(root["trials"], "trials", "must be positive");
    }
    if (root["grid_resolution"]) {
      const long g = Integer(root["grid_resolution"], "grid_resolution");
      if (g < 2 || g > 10000000) Fail(root["grid_resolution"], "grid_resolution", "must lie in [2, 1e7]");
      cfg_.grid_resolution = static_cast<int>(g);
    }
    if (root["threads"]) {
      const long t = Integer(root["threads"], "threads");
      if (t < 1 || t > 256) Fail(root["threads"], "threads", "must lie in [1, 256]");
      cfg_.threads = static_cast<int>(t);
    }
    if (root["output"]) Output(root["output"]);

    // Variant requirements.
    auto need = [&](bool ok, const char* field, const char* what) {
      if (!ok) Fail(root, field, std::string("variant ") + v + " needs " + what);
    };
    switch (cfg_.variant) {
      case Variant::kCs:
        need(cfg_.surplus || cfg_.cournot_cs_E, "surplus",
             "a surplus section or cournot.cs_E");
        break;
      case Variant::kTech:
        need(cfg_.tau.has_value() || (cfg_.sweep && cfg_.sweep->parameter == "tau"),
             "tau", "tau");
        break;
      case Variant::kSurplusShare:
        need(cfg_.sigma.has_value() || (cfg_.sweep && cfg_.sweep->parameter == "sigma"),
             "sigma", "sigma");
        break;
      case Variant::kPartial:
        need(cfg_.curves.has_value(), "curves", "a curves section");
        break;
      case Variant::kLabor:
        need(cfg_.shocks.has_value(), "shocks", "a shocks section");
        break;
      default:
        break;
    }
    if (cfg_.sweep) {
      const std::string& p = cfg_.sweep->parameter;
      if ((p == "tau" && cfg_.variant != Variant::kTech) ||
          (p == "sigma" && cfg_.variant != Variant::kSurplusShare)) {
        Fail(root["sweep"], "sweep.parameter", p + " cannot be swept for variant " + v);
      }
      if (p == "lambda") {
        for (const Rational& l : cfg_.sweep->values) {
          if (!(l > 0 && l < 1)) Fail(root["sweep"], "sweep", "lambda values must lie in (0,1)");
        }
      }
    }
  }

 private:
  RunConfig& cfg_;
};

}  // namespace

std::string ToString(Variant v) {
  for (const auto& [name, value] : Variants()) {
    if (value == v) return name;
  }
  return "?";
}

ConfigError::ConfigError(std::string source, int line, std::string field,
                         const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") +
                         ": " + field + ": " + message),
      field_(std::move(field)),
      line_(line) {}

ProfitProfile RunConfig::Profile() const {
  if (profile) return *profile;
  if (cournot) {
    if (variant == Variant::kNFirm) return nfirm_profit_profile(*cournot, cournot_pi_E);
    return duopoly_profiles(*cournot, cournot_pi_E, cournot_cs_E.value_or(0)).profit;
  }
  throw ValidationError("primitives", "variant " + ToString(variant) +
                                          " has no single profit profile");
}

std::optional<SurplusProfile> RunConfig::Surplus() const {
  if (surplus) return surplus;
  if (cournot && cournot_cs_E && cournot->n == 2) {
    return duopoly_profiles(*cournot, cournot_pi_E, *cournot_cs_E).surplus;
  }
  return std::nullopt;
}

int RunConfig::Line(const std::string& key) const {
  const auto it = lines.find(key);
  return it == lines.end() ? 0 : it->second;
}

std::vector<Rational> RunConfig::LambdaGrid() const {
  if (sweep && sweep->parameter == "lambda") return sweep->values;
  return {lambda};
}

RunConfig ParseConfig(const std::string& text, const std::string& source) {
  RunConfig cfg;
  cfg.source = source;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line + 1, "yaml", e.msg);
  }
  Reader(cfg).Root(root);
  return cfg;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "config", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(), path);
}

}  // namespace acquihire
