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

// Partial acquisitions with blocking rights. Firm 1 may buy a stake s in
// the startup instead of acquihiring it; a rival bid then either leaves
// the startup alone (N), is accepted by the entrepreneur only and risks a
// block with probability beta(s) (E), or compensates both owners (B).

#ifndef ACQUIHIRE_PARTIAL_ACQ_HPP_
#define ACQUIHIRE_PARTIAL_ACQ_HPP_

#include <optional>
#include <string>
#include <vector>

#include "acquihire/equilibrium.hpp"
#include "acquihire/model_core.hpp"
#include "acquihire/rational.hpp"

namespace acquihire {

struct CurveRow {
  Rational s;
  Rational v;
  Rational beta;
};

// Startup value v(s) = pi_E(s) + w(s) net of effort and the blocking
// probability beta(s), as functions of the outside stake s in [0,1].
//
// Value families: "power" v0 - (v0 - v1) s^kappa, or "table" (piecewise
// linear through rows). The split is pi_E(s) = (1 - omega) v(s),
// w(s) = omega v(s). Blocking families: "power" s^eta, "none" (beta = 0
// everywhere, no blocking rights) or "table".
//
// Integer exponents are evaluated exactly; other exponents go through
// std::pow and are converted back exactly.
class OwnershipCurves {
 public:
  static OwnershipCurves Power(Rational v0, Rational v1, Rational kappa = 1,
                               Rational omega = 0, Rational eta = 1);
  static OwnershipCurves PowerNoBlocking(Rational v0, Rational v1,
                                         Rational kappa = 1,
                                         Rational omega = 0);
  // Rows must start at s = 0 and end at s = 1 with s strictly increasing,
  // v strictly decreasing and beta weakly increasing from 0 to 1. With
  // blocking = false the beta column is ignored.
  static OwnershipCurves Table(std::vector<CurveRow> rows, Rational omega = 0,
                               bool blocking = true);

  Rational v(const Rational& s) const;
  Rational pi_E(const Rational& s) const { return (1 - omega_) * v(s); }
  Rational w(const Rational& s) const { return omega_ * v(s); }
  Rational beta(const Rational& s) const;
  // v(s) - v(0); never positive.
  Rational delta(const Rational& s) const { return v(s) - v(0); }

  bool has_blocking() const { return blocking_ != Blocking::kNone; }
  std::string Describe() const;

 private:
  enum class Value { kPower, kTable };
  enum class Blocking { kPower, kNone, kTable };

  OwnershipCurves() = default;

  Value value_ = Value::kPower;
  Blocking blocking_ = Blocking::kPower;
  Rational v0_, v1_, kappa_ = 1, omega_ = 0, eta_ = 1;
  std::vector<CurveRow> rows_;
};

enum class Firm2Response { kNothing, kEntrepreneurOnly, kBoth };

std::string ToString(Firm2Response r);  // "N", "E", "B"

enum class PartialCase { kCase1, kCase2, kCase3 };

std::string ToString(PartialCase c);

// Missing values mean the defining condition fails on all of [0,1]; for
// ordering they count as lying above 1.
struct PartialThresholds {
  std::optional<Rational> s_hat;
  std::optional<Rational> s_L;
  std::optional<Rational> s_H;
  PartialCase partial_case = PartialCase::kCase1;
};

// Regimes are named (low rival response, high rival response).
enum class PartialRegime { kNE, kNB, kEB, kBB, kEE, kBE, kAcquihire, kNothing };

std::string ToString(PartialRegime r);

PartialRegime RegimeOf(Firm2Response low, Firm2Response high);

struct RegimePayoff {
  PartialRegime regime = PartialRegime::kNothing;
  Rational value;
  Rational delta_s;
};

struct Firm2Payoffs {
  Rational nothing;
  Rational entrepreneur_only;
  Rational both;
};

// v(0) - (1 - s1) pi_E(s1) - w(s1). Throws ValidationError unless
// s1 in (0,1].
Rational minimum_bid(const Rational& s1, const OwnershipCurves& curves);

// Roots by bisection to an interval width of 1e-12; each returned share is
// the upper end, where the condition holds. Throws ValidationError if A1
// fails, v(0) != pi_E, or a condition is not monotone on a 64-point scan.
PartialThresholds compute_thresholds(const ProfitProfile& profile,
                                     const OwnershipCurves& curves);

Firm2Payoffs firm2_payoffs(MatchType type, const Rational& s1,
                           const ProfitProfile& profile,
                           const OwnershipCurves& curves);

// Exhaustive comparison of the three options; ties go B, then E, then N.
Firm2Response firm2_best_response(MatchType type, const Rational& s1,
                                  const ProfitProfile& profile,
                                  const OwnershipCurves& curves);

// Low firm 1's payoff. Investment regimes must match the rival's best
// responses at s (ValidationError otherwise); s is ignored for kNothing and
// kAcquihire.
RegimePayoff firm1_payoff(PartialRegime regime, const Rational& s,
                          const Rational& lambda, const ProfitProfile& profile,
                          const OwnershipCurves& curves);

// Startup survives with firm 1 holding a stake.
inline constexpr const char* kOutcomeFirm1Invest = "firm1_invest";

struct InvestOption {
  Rational share;
  PartialRegime regime = PartialRegime::kNE;
  Rational value;
};

struct LambdaSegment {
  Rational lambda_from;  // first grid point of the segment
  Action action = Action::kNothing;
  std::optional<Rational> share;
};

struct PartialResult {
  EquilibriumReport report;
  PartialThresholds thresholds;
  Rational nothing_value;
  Rational acquihire_value;
  std::optional<InvestOption> best_invest;
  std::optional<Firm2Response> response_low;   // after an investment
  std::optional<Firm2Response> response_high;
  // Low firm 1's choice on lambda = k/(n+1), k = 1..n, merged into runs.
  std::vector<LambdaSegment> structure;
};

// Searches s on k/(grid_resolution - 1), k >= 1, plus both ends of every
// threshold bracket. Throws ValidationError if grid_resolution < 2.
PartialResult solve_partial(const ProfitProfile& profile,
                            const OwnershipCurves& curves,
                            const Rational& lambda, int grid_resolution = 1001,
                            int structure_points = 101);

}  // namespace acquihire

#endif  // ACQUIHIRE_PARTIAL_ACQ_HPP_
