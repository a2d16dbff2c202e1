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

#include "acquihire/model_core.hpp"

#include <cmath>

namespace acquihire {
namespace {

Rational Finite(double x, const char* field) {
  if (!std::isfinite(x)) {
    throw ValidationError(field, std::string("field ") + field +
                                     " is not finite");
  }
  return Rational(x);
}

std::string N(const Rational& q) { return FormatSig(q); }

AssumptionCheck Check(std::string name, std::string statement,
                      std::string rendered, bool passed) {
  return AssumptionCheck{std::move(name), std::move(statement),
                         std::move(rendered), passed};
}

void RequireOk(const ValidationReport& r) {
  if (!r.ok()) {
    std::string msg = "assumption violated: ";
    bool first = true;
    for (const auto& c : r.checks) {
      if (c.passed) continue;
      if (!first) msg += "; ";
      msg += c.name + " requires " + c.statement + " but " + c.rendered;
      first = false;
    }
    throw ValidationError("assumptions", msg);
  }
}

}  // namespace

std::string ToString(MatchType t) {
  return t == MatchType::kHigh ? "High" : "Low";
}

ValidationError::ValidationError(std::string field, const std::string& message)
    : std::invalid_argument(message), field_(std::move(field)) {}

ProfitProfile ProfitProfile::FromDoubles(double pi_F, double pi_bar_H,
                                         double pi_bar_L, double pi_under_H,
                                         double pi_under_L, double pi_E) {
  return ProfitProfile{Finite(pi_F, "pi_F"),
                       Finite(pi_bar_H, "pi_bar_H"),
                       Finite(pi_bar_L, "pi_bar_L"),
                       Finite(pi_under_H, "pi_under_H"),
                       Finite(pi_under_L, "pi_under_L"),
                       Finite(pi_E, "pi_E")};
}

SurplusProfile SurplusProfile::FromDoubles(double cs_F, double cs_E,
                                           double cs_L, double cs_H) {
  return SurplusProfile{Finite(cs_F, "cs_F"), Finite(cs_E, "cs_E"),
                        Finite(cs_L, "cs_L"), Finite(cs_H, "cs_H")};
}

MatchPrior::MatchPrior(Rational lambda) : lambda_(std::move(lambda)) {
  if (lambda_ <= 0 || lambda_ >= 1) {
    throw ValidationError("lambda", "lambda = " + N(lambda_) +
                                        " must lie in the open interval (0,1)");
  }
}

bool ValidationReport::ok() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string ValidationReport::Failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!out.empty()) out += ", ";
    out += c.name;
  }
  return out;
}

ValidationReport validate_baseline(const ProfitProfile& p) {
  if (p.pi_E < 0) {
    throw ValidationError("pi_E", "pi_E = " + N(p.pi_E) + " must be >= 0");
  }
  ValidationReport r;
  const Rational joint = p.pi_F + p.pi_E;
  r.checks.push_back(Check(
      "A1(i)", "pi_bar_H > pi_F + pi_E > pi_bar_L",
      N(p.pi_bar_H) + " > " + N(joint) + " > " + N(p.pi_bar_L),
      p.pi_bar_H > joint && joint > p.pi_bar_L));
  r.checks.push_back(Check(
      "A1(ii)", "pi_F >= pi_under_L > pi_under_H",
      N(p.pi_F) + " >= " + N(p.pi_under_L) + " > " + N(p.pi_under_H),
      p.pi_F >= p.pi_under_L && p.pi_under_L > p.pi_under_H));
  return r;
}

ValidationReport validate_surplus(const SurplusProfile& s) {
  ValidationReport r;
  r.checks.push_back(Check(
      "A2", "cs_H >= cs_L >= cs_F",
      N(s.cs_H) + " >= " + N(s.cs_L) + " >= " + N(s.cs_F),
      s.cs_H >= s.cs_L && s.cs_L >= s.cs_F));
  r.checks.push_back(Check("cs_E", "cs_E >= 0", N(s.cs_E) + " >= 0",
                           s.cs_E >= 0));
  return r;
}

ValidationReport validate_gains(const GainProfile& g) {
  if (g.tau < 0 || g.tau > 1) {
    throw ValidationError("tau", "tau = " + N(g.tau) + " must lie in [0,1]");
  }
  ValidationReport r;
  r.checks.push_back(Check(
      "A3", "g_bar_H > pi_E > g_bar_L and g_under_H > g_under_L >= 0",
      N(g.g_bar_H) + " > " + N(g.pi_E) + " > " + N(g.g_bar_L) + " and " +
          N(g.g_under_H) + " > " + N(g.g_under_L) + " >= 0",
      g.g_bar_H > g.pi_E && g.pi_E > g.g_bar_L && g.g_under_H > g.g_under_L &&
          g.g_under_L >= 0));
  const Rational a4 = g.g_bar_H + g.g_under_L - g.g_bar_L - g.g_under_H;
  r.checks.push_back(Check(
      "A4", "g_bar_H + g_under_L - g_bar_L - g_under_H > 0", N(a4) + " > 0",
      a4 > 0));
  return r;
}

void RequireBaseline(const ProfitProfile& p) { RequireOk(validate_baseline(p)); }
void RequireSurplus(const SurplusProfile& s) { RequireOk(validate_surplus(s)); }
void RequireGains(const GainProfile& g) { RequireOk(validate_gains(g)); }

GainProfile ToGains(const ProfitProfile& p, const Rational& tau) {
  return GainProfile{p.pi_bar_H - p.pi_F,   p.pi_bar_L - p.pi_F,
                     p.pi_F - p.pi_under_H, p.pi_F - p.pi_under_L,
                     tau,                   p.pi_F,
                     p.pi_E};
}

ProfitProfile ToProfile(const GainProfile& g) {
  return ProfitProfile{g.pi_F,
                       g.pi_F + g.g_bar_H,
                       g.pi_F + g.g_bar_L,
                       g.pi_F - g.g_under_H,
                       g.pi_F - g.g_under_L,
                       g.pi_E};
}

}  // namespace acquihire
