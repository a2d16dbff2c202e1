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

#ifndef ACQUIHIRE_MODEL_CORE_HPP_
#define ACQUIHIRE_MODEL_CORE_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "acquihire/rational.hpp"

namespace acquihire {

enum class MatchType { kHigh, kLow };

std::string ToString(MatchType t);

// Input rejected before any assumption is evaluated (non-finite number,
// out-of-range parameter). `field()` names the offending input.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Market profits of the symmetric two-firm baseline. pi_bar_* is the
// acquirer's profit, pi_under_* the rival's, by the acquirer's match type.
struct ProfitProfile {
  Rational pi_F;
  Rational pi_bar_H;
  Rational pi_bar_L;
  Rational pi_under_H;
  Rational pi_under_L;
  Rational pi_E;

  // Throws ValidationError naming the first non-finite field.
  static ProfitProfile FromDoubles(double pi_F, double pi_bar_H,
                                   double pi_bar_L, double pi_under_H,
                                   double pi_under_L, double pi_E);

  const Rational& pi_bar(MatchType t) const {
    return t == MatchType::kHigh ? pi_bar_H : pi_bar_L;
  }
  const Rational& pi_under(MatchType t) const {
    return t == MatchType::kHigh ? pi_under_H : pi_under_L;
  }

  bool operator==(const ProfitProfile&) const = default;
};

struct SurplusProfile {
  Rational cs_F;
  Rational cs_E;
  Rational cs_L;
  Rational cs_H;

  static SurplusProfile FromDoubles(double cs_F, double cs_E, double cs_L,
                                    double cs_H);

  bool operator==(const SurplusProfile&) const = default;
};

// Resale notation: gains relative to pi_F plus the technology share tau.
struct GainProfile {
  Rational g_bar_H;
  Rational g_bar_L;
  Rational g_under_H;
  Rational g_under_L;
  Rational tau;
  Rational pi_F;
  Rational pi_E;

  const Rational& g_bar(MatchType t) const {
    return t == MatchType::kHigh ? g_bar_H : g_bar_L;
  }
  const Rational& g_under(MatchType t) const {
    return t == MatchType::kHigh ? g_under_H : g_under_L;
  }

  bool operator==(const GainProfile&) const = default;
};

// Probability that a firm is a high match; lambda lies in (0,1).
class MatchPrior {
 public:
  explicit MatchPrior(Rational lambda);  // throws ValidationError
  const Rational& lambda() const { return lambda_; }

 private:
  Rational lambda_;
};

struct AssumptionCheck {
  std::string name;        // e.g. "A1(i)"
  std::string statement;   // symbolic inequality
  std::string rendered;    // the same inequality with numbers substituted
  bool passed = false;
  bool operator==(const AssumptionCheck&) const = default;
};

struct ValidationReport {
  std::vector<AssumptionCheck> checks;

  bool ok() const;
  // Names of failed checks joined by ", "; empty when ok().
  std::string Failures() const;
  bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate_baseline(const ProfitProfile& profile);
ValidationReport validate_surplus(const SurplusProfile& s);
ValidationReport validate_gains(const GainProfile& g);

// Throw ValidationError("assumptions", ...) when the report fails.
void RequireBaseline(const ProfitProfile& profile);
void RequireSurplus(const SurplusProfile& s);
void RequireGains(const GainProfile& g);

// pi_bar_t = pi_F + g_bar_t, pi_under_t = pi_F - g_under_t.
GainProfile ToGains(const ProfitProfile& profile, const Rational& tau);
ProfitProfile ToProfile(const GainProfile& g);

}  // namespace acquihire

#endif  // ACQUIHIRE_MODEL_CORE_HPP_
