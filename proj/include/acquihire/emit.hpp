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

// CSV and JSON emission. CSV cells use 6 significant digits and LF line
// endings; JSON documents keep insertion order and carry every rational as
// {"exact": "p/q", "approx": double}.

#ifndef ACQUIHIRE_EMIT_HPP_
#define ACQUIHIRE_EMIT_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "acquihire/equilibrium.hpp"
#include "acquihire/labor_dynamics.hpp"
#include "acquihire/model_core.hpp"
#include "acquihire/rational.hpp"

namespace acquihire {

using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws std::out_of_range.
  std::size_t Column(const std::string& name) const;
  const std::string& At(std::size_t row, const std::string& column) const;
};

std::string Cell(const Rational& q);  // 6 significant digits
std::string Cell(bool b);             // "true" / "false"
std::string Cell(const std::optional<Rational>& q);  // empty when absent

// Quotes cells holding commas, quotes or newlines.
std::string ToCsv(const Table& t);
// Inverse of ToCsv. Throws std::invalid_argument on ragged rows.
Table ParseCsv(const std::string& text);

Json ToJson(const Rational& q);
Rational RationalFromJson(const Json& j);  // reads "exact"
Json ToJson(const Threshold& t);
Json ToJson(const ValidationReport& r);
Json ToJson(const LaborOutcome& o);
Json ToJson(const EquilibriumReport& r);
// Throws std::invalid_argument on a malformed document.
EquilibriumReport ReportFromJson(const Json& j);

// A report as field,value,exact rows; value is the 6-digit rendering and
// exact the full one, so ReportFromTable(ReportToTable(r)) == r.
Table ReportToTable(const EquilibriumReport& r);
EquilibriumReport ReportFromTable(const Table& t);

// A homogeneous set of result records, rendered to CSV (6 significant
// digits) or JSON (exact rationals). Monostate renders as an empty cell or
// null.
using Field = std::variant<std::monostate, Rational, bool, std::string, long>;

struct RecordSet {
  std::vector<std::string> header;
  std::vector<std::vector<Field>> rows;
};

Field OptionalField(const std::optional<Rational>& q);
Table ToTable(const RecordSet& r);
// {"columns": [...], "rows": [{column: value}, ...]}
Json ToJson(const RecordSet& r);

// Writes `text` to `path`, creating parent directories; empty path writes
// to standard output. Throws std::runtime_error if the file is unwritable.
void WriteOutput(const std::string& path, const std::string& text);

}  // namespace acquihire

#endif  // ACQUIHIRE_EMIT_HPP_
