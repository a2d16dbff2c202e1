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

#include "acquihire/emit.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace acquihire {
namespace {

template <typename E>
E Parse(const std::string& text, std::initializer_list<E> values, const char* what) {
  for (E v : values) {
    if (ToString(v) == text) return v;
  }
  throw std::invalid_argument(std::string("unknown ") + what + " '" + text + "'");
}

Action ParseAction(const std::string& s) {
  return Parse(s, {Action::kAcquihire, Action::kInvest, Action::kSellTech, Action::kNothing},
               "action");
}
MatchType ParseType(const std::string& s) {
  return Parse(s, {MatchType::kHigh, MatchType::kLow}, "type");
}
ThresholdVerdict ParseVerdict(const std::string& s) {
  return Parse(s, {ThresholdVerdict::kInterior, ThresholdVerdict::kAlways,
                   ThresholdVerdict::kNever},
               "verdict");
}
CsRegime ParseRegime(const std::string& s) {
  return Parse(s, {CsRegime::kAllHarm, CsRegime::kAllBenefit, CsRegime::kHarmIffBetween},
               "regime");
}
bool ParseBool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("expected true or false, got '" + s + "'");
}

using ThresholdSlot = std::optional<Threshold> HoardingThresholds::*;
const std::vector<std::pair<const char*, ThresholdSlot>>& ThresholdSlots() {
  static const std::vector<std::pair<const char*, ThresholdSlot>> kSlots = {
      {"lambda_A", &HoardingThresholds::lambda_A},
      {"lambda_CS", &HoardingThresholds::lambda_CS},
      {"lambda_A_tau", &HoardingThresholds::lambda_A_tau},
      {"lambda_prime", &HoardingThresholds::lambda_prime},
      {"lambda_AS", &HoardingThresholds::lambda_AS},
      {"lambda_D", &HoardingThresholds::lambda_D},
      {"lambda_C", &HoardingThresholds::lambda_C},
  };
  return kSlots;
}

using RationalSlot = std::optional<Rational> EquilibriumReport::*;
const std::vector<std::pair<const char*, RationalSlot>>& RationalSlots() {
  static const std::vector<std::pair<const char*, RationalSlot>> kSlots = {
      {"sale_price", &EquilibriumReport::sale_price},
      {"expected_cs_allowed", &EquilibriumReport::expected_cs_allowed},
      {"expected_cs_banned", &EquilibriumReport::expected_cs_banned},
      {"expected_cs_only_high", &EquilibriumReport::expected_cs_only_high},
      {"total_surplus_allowed", &EquilibriumReport::total_surplus_allowed},
      {"total_surplus_banned", &EquilibriumReport::total_surplus_banned},
  };
  return kSlots;
}

std::string EntryKey(const StrategyEntry& e) {
  return "strategy." + std::to_string(e.firm) + "." + ToString(e.type);
}

Threshold ThresholdFromJson(const Json& j) {
  Threshold t;
  if (!j.at("value").is_null()) t.value = RationalFromJson(j.at("value"));
  t.verdict = ParseVerdict(j.at("verdict").get<std::string>());
  t.diagnostic = j.at("diagnostic").get<std::string>();
  return t;
}

}  // namespace

std::size_t Table::Column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

const std::string& Table::At(std::size_t row, const std::string& column) const {
  return rows.at(row).at(Column(column));
}

std::string Cell(const Rational& q) { return FormatSig(q, 6); }
std::string Cell(bool b) { return b ? "true" : "false"; }
std::string Cell(const std::optional<Rational>& q) { return q ? Cell(*q) : ""; }

std::string ToCsv(const Table& t) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n\r") == std::string::npos) {
        out += c;
        continue;
      }
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

Table ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
      continue;
    }
    any = true;
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (ch == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      lines.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      cell += ch;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV");
  if (any) {
    row.push_back(std::move(cell));
    lines.push_back(std::move(row));
  }
  if (lines.empty()) throw std::invalid_argument("CSV has no header");
  Table t;
  t.header = std::move(lines.front());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != t.header.size()) {
      throw std::invalid_argument("CSV row " + std::to_string(i) + " has " +
                                  std::to_string(lines[i].size()) + " cells, header has " +
                                  std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(lines[i]));
  }
  return t;
}

Json ToJson(const Rational& q) {
  Json j;
  j["exact"] = ToExactString(q);
  j["approx"] = ToDouble(q);
  return j;
}

Rational RationalFromJson(const Json& j) {
  try {
    return ParseRational(j.at("exact").get<std::string>());
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad rational: ") + e.what());
  }
}

Json ToJson(const Threshold& t) {
  Json j;
  j["value"] = t.value ? ToJson(*t.value) : Json(nullptr);
  j["verdict"] = ToString(t.verdict);
  j["diagnostic"] = t.diagnostic;
  return j;
}

Json ToJson(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json k;
    k["name"] = c.name;
    k["statement"] = c.statement;
    k["rendered"] = c.rendered;
    k["passed"] = c.passed;
    checks.push_back(k);
  }
  j["checks"] = checks;
  return j;
}

Json ToJson(const LaborOutcome& o) {
  Json j;
  j["hire"] = ToJson(o.hire_rate);
  j["layoff"] = ToJson(o.layoff_rate);
  j["exit"] = ToJson(o.exit_rate);
  return j;
}

Json ToJson(const EquilibriumReport& r) {
  Json j;
  j["variant"] = r.variant;
  j["lambda"] = ToJson(r.lambda);
  Json strategy = Json::array();
  for (const auto& e : r.strategy) {
    Json s;
    s["firm"] = e.firm;
    s["type"] = ToString(e.type);
    s["action"] = ToString(e.action);
    s["share"] = e.share ? ToJson(*e.share) : Json(nullptr);
    s["sells_to_high_only"] = e.sells_to_high_only;
    strategy.push_back(s);
  }
  j["strategy"] = strategy;
  j["bid"] = ToJson(r.bid);
  Json outcomes = Json::object();
  for (const auto& [label, p] : r.outcome_distribution) outcomes[label] = ToJson(p);
  j["outcome_distribution"] = outcomes;
  Json th = Json::object();
  for (const auto& [name, slot] : ThresholdSlots()) {
    const auto& t = r.thresholds.*slot;
    th[name] = t ? ToJson(*t) : Json(nullptr);
  }
  j["thresholds"] = th;
  for (const auto& [name, slot] : RationalSlots()) {
    const auto& q = r.*slot;
    j[name] = q ? ToJson(*q) : Json(nullptr);
  }
  j["regime"] = r.regime ? Json(ToString(*r.regime)) : Json(nullptr);
  j["harmful"] = r.harmful ? Json(*r.harmful) : Json(nullptr);
  return j;
}

EquilibriumReport ReportFromJson(const Json& j) {
  try {
    EquilibriumReport r;
    r.variant = j.at("variant").get<std::string>();
    r.lambda = RationalFromJson(j.at("lambda"));
    for (const auto& s : j.at("strategy")) {
      StrategyEntry e;
      e.firm = s.at("firm").get<int>();
      e.type = ParseType(s.at("type").get<std::string>());
      e.action = ParseAction(s.at("action").get<std::string>());
      if (!s.at("share").is_null()) e.share = RationalFromJson(s.at("share"));
      e.sells_to_high_only = s.at("sells_to_high_only").get<bool>();
      r.strategy.push_back(e);
    }
    r.bid = RationalFromJson(j.at("bid"));
    for (const auto& [label, p] : j.at("outcome_distribution").items()) {
      r.outcome_distribution[label] = RationalFromJson(p);
    }
    const Json& th = j.at("thresholds");
    for (const auto& [name, slot] : ThresholdSlots()) {
      if (th.contains(name) && !th.at(name).is_null()) {
        r.thresholds.*slot = ThresholdFromJson(th.at(name));
      }
    }
    for (const auto& [name, slot] : RationalSlots()) {
      if (j.contains(name) && !j.at(name).is_null()) r.*slot = RationalFromJson(j.at(name));
    }
    if (j.contains("regime") && !j.at("regime").is_null()) {
      r.regime = ParseRegime(j.at("regime").get<std::string>());
    }
    if (j.contains("harmful") && !j.at("harmful").is_null()) {
      r.harmful = j.at("harmful").get<bool>();
    }
    return r;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

Table ReportToTable(const EquilibriumReport& r) {
  Table t;
  t.header = {"field", "value", "exact"};
  auto text = [&t](const std::string& field, const std::string& v) {
    t.rows.push_back({field, v, v});
  };
  auto num = [&t](const std::string& field, const Rational& q) {
    t.rows.push_back({field, Cell(q), ToExactString(q)});
  };
  text("variant", r.variant);
  num("lambda", r.lambda);
  for (const auto& e : r.strategy) {
    const std::string key = EntryKey(e);
    text(key + ".action", ToString(e.action));
    if (e.share) num(key + ".share", *e.share);
    text(key + ".sells_to_high_only", Cell(e.sells_to_high_only));
  }
  num("bid", r.bid);
  for (const auto& [label, p] : r.outcome_distribution) num("outcome." + label, p);
  for (const auto& [name, slot] : ThresholdSlots()) {
    const auto& th = r.thresholds.*slot;
    if (!th) continue;
    const std::string key = std::string("thresholds.") + name;
    if (th->value) num(key + ".value", *th->value);
    text(key + ".verdict", ToString(th->verdict));
    text(key + ".diagnostic", th->diagnostic);
  }
  for (const auto& [name, slot] : RationalSlots()) {
    if (r.*slot) num(name, *(r.*slot));
  }
  if (r.regime) text("regime", ToString(*r.regime));
  if (r.harmful) text("harmful", Cell(*r.harmful));
  return t;
}

EquilibriumReport ReportFromTable(const Table& t) {
  const std::size_t field = t.Column("field");
  const std::size_t exact = t.Column("exact");
  EquilibriumReport r;
  std::map<std::string, Threshold> thresholds;
  for (const auto& row : t.rows) {
    const std::string& f = row[field];
    const std::string& v = row[exact];
    auto prefixed = [&f](const std::string& p) { return f.rfind(p, 0) == 0; };
    if (f == "variant") {
      r.variant = v;
    } else if (f == "lambda") {
      r.lambda = ParseRational(v);
    } else if (f == "bid") {
      r.bid = ParseRational(v);
    } else if (prefixed("strategy.")) {
      // strategy.<firm>.<type>.<attribute>
      const std::size_t a = f.find('.', 9);
      const std::size_t b = f.find('.', a + 1);
      if (a == std::string::npos || b == std::string::npos) {
        throw std::invalid_argument("bad strategy field '" + f + "'");
      }
      const int firm = std::stoi(f.substr(9, a - 9));
      const MatchType type = ParseType(f.substr(a + 1, b - a - 1));
      const std::string attr = f.substr(b + 1);
      if (r.strategy.empty() || r.strategy.back().firm != firm ||
          r.strategy.back().type != type) {
        StrategyEntry e;
        e.firm = firm;
        e.type = type;
        r.strategy.push_back(e);
      }
      StrategyEntry& e = r.strategy.back();
      if (attr == "action") {
        e.action = ParseAction(v);
      } else if (attr == "share") {
        e.share = ParseRational(v);
      } else if (attr == "sells_to_high_only") {
        e.sells_to_high_only = ParseBool(v);
      } else {
        throw std::invalid_argument("bad strategy field '" + f + "'");
      }
    } else if (prefixed("outcome.")) {
      r.outcome_distribution[f.substr(8)] = ParseRational(v);
    } else if (prefixed("thresholds.")) {
      const std::size_t dot = f.find('.', 11);
      if (dot == std::string::npos) throw std::invalid_argument("bad field '" + f + "'");
      Threshold& th = thresholds[f.substr(11, dot - 11)];
      const std::string attr = f.substr(dot + 1);
      if (attr == "value") {
        th.value = ParseRational(v);
      } else if (attr == "verdict") {
        th.verdict = ParseVerdict(v);
      } else if (attr == "diagnostic") {
        th.diagnostic = v;
      } else {
        throw std::invalid_argument("bad field '" + f + "'");
      }
    } else if (f == "regime") {
      r.regime = ParseRegime(v);
    } else if (f == "harmful") {
      r.harmful = ParseBool(v);
    } else {
      bool found = false;
      for (const auto& [name, slot] : RationalSlots()) {
        if (f == name) {
          r.*slot = ParseRational(v);
          found = true;
        }
      }
      if (!found) throw std::invalid_argument("unknown field '" + f + "'");
    }
  }
  for (const auto& [name, th] : thresholds) {
    bool found = false;
    for (const auto& [slot_name, slot] : ThresholdSlots()) {
      if (name == slot_name) {
        r.thresholds.*slot = th;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unknown threshold '" + name + "'");
  }
  return r;
}

Field OptionalField(const std::optional<Rational>& q) {
  if (q) return *q;
  return std::monostate{};
}

Table ToTable(const RecordSet& r) {
  Table t;
  t.header = r.header;
  for (const auto& row : r.rows) {
    std::vector<std::string> cells;
    for (const Field& f : row) {
      cells.push_back(std::visit(
          [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              return "";
            } else if constexpr (std::is_same_v<T, std::string>) {
              return v;
            } else if constexpr (std::is_same_v<T, long>) {
              return std::to_string(v);
            } else {
              return Cell(v);
            }
          },
          f));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Json ToJson(const RecordSet& r) {
  Json j;
  j["columns"] = r.header;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size() && i < r.header.size(); ++i) {
      obj[r.header[i]] = std::visit(
          [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              return nullptr;
            } else if constexpr (std::is_same_v<T, Rational>) {
              return ToJson(v);
            } else {
              return v;
            }
          },
          row[i]);
    }
    rows.push_back(obj);
  }
  j["rows"] = rows;
  return j;
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace acquihire
