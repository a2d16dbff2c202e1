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

// Run configuration: a YAML document with nested sections. Every number is
// read as an exact rational ("0.9", "49/45", "1e-3"). Unknown keys are
// errors. The grammar is documented in README.md.

#ifndef ACQUIHIRE_CONFIG_HPP_
#define ACQUIHIRE_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acquihire/cournot.hpp"
#include "acquihire/equilibrium.hpp"
#include "acquihire/labor_dynamics.hpp"
#include "acquihire/model_core.hpp"
#include "acquihire/partial_acq.hpp"
#include "acquihire/rational.hpp"

namespace acquihire {

enum class Variant {
  kBaseline,
  kCs,
  kTech,
  kPartial,
  kLabor,
  kDominant,
  kNFirm,
  kUncertainOrder,
  kSurplusShare,
};

std::string ToString(Variant v);  // the config spelling, e.g. "uncertain_order"

// A problem with the configuration itself. `line` is 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, std::string field,
              const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

struct GridSpec {
  std::string parameter;  // lambda, tau or sigma
  std::vector<Rational> values;
};

struct OutputSpec {
  std::string path;  // empty: standard output
  std::string format;  // csv or json; empty: the subcommand default
};

struct RunConfig {
  std::string source = "<config>";
  Variant variant = Variant::kBaseline;

  // Primitives: exactly one of profile, cournot (with pi_E, optional cs_E)
  // or dominant.
  std::optional<ProfitProfile> profile;
  std::optional<CournotParams> cournot;
  Rational cournot_pi_E;
  std::optional<Rational> cournot_cs_E;
  std::optional<ProportionalSpec> dominant;

  std::optional<SurplusProfile> surplus;
  Rational lambda = Frac(1, 2);
  std::optional<Rational> tau;
  std::optional<Rational> sigma;
  std::optional<OwnershipCurves> curves;
  std::optional<ShockParams> shocks;
  std::optional<GridSpec> sweep;

  std::uint64_t seed = 1;
  long trials = 100000;
  int grid_resolution = 1001;
  int threads = 1;
  OutputSpec output;

  // Dotted key -> line number of the key in the document.
  std::map<std::string, int> lines;

  // Two-firm profile for every variant but nfirm and dominant; the n-firm
  // profile for nfirm. Throws ValidationError or CornerSolutionError.
  ProfitProfile Profile() const;
  // Explicit surplus, else the Cournot one when cs_E is given.
  std::optional<SurplusProfile> Surplus() const;
  int Line(const std::string& key) const;
  // Grid values for a sweep, or the single configured value.
  std::vector<Rational> LambdaGrid() const;
};

// Throws ConfigError.
RunConfig ParseConfig(const std::string& text,
                      const std::string& source = "<config>");
RunConfig LoadConfig(const std::string& path);

}  // namespace acquihire

#endif  // ACQUIHIRE_CONFIG_HPP_
