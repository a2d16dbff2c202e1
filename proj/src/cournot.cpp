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

#include "acquihire/cournot.hpp"

namespace acquihire {
namespace {

// H == L is accepted: the profiles are then degenerate and A1 reports the
// failure instead of the constructor rejecting them.
void ValidateParams(const CournotParams& p) {
  if (p.b <= 0) throw ValidationError("b", "demand slope b must be > 0");
  if (p.c <= 0) throw ValidationError("c", "marginal cost c must be > 0");
  if (p.n < 2) throw ValidationError("n", "firm count n must be >= 2");
  if (p.L < 0) throw ValidationError("L", "L must be >= 0");
  if (p.H < p.L) throw ValidationError("H", "H must be >= L");
}

std::vector<Rational> OneDeviant(const CournotParams& p, const Rational& theta) {
  std::vector<Rational> costs(static_cast<size_t>(p.n), p.c);
  costs[0] = p.c - theta;
  return costs;
}

}  // namespace

CournotOutcome asymmetric_equilibrium(const Rational& a, const Rational& b,
                                      const std::vector<Rational>& costs) {
  if (b <= 0) throw std::invalid_argument("demand slope b must be > 0");
  if (costs.empty()) throw std::invalid_argument("at least one firm required");
  const Rational n(static_cast<long>(costs.size()));
  Rational total_cost(0);
  for (const auto& c : costs) total_cost += c;

  CournotOutcome out;
  out.quantities.reserve(costs.size());
  Rational total_q(0);
  for (size_t i = 0; i < costs.size(); ++i) {
    Rational others = total_cost - costs[i];
    Rational q = (a - n * costs[i] + others) / ((n + 1) * b);
    if (q <= 0) {
      throw CornerSolutionError("firm " + std::to_string(i) + " has quantity " +
                                FormatSig(q) + " <= 0");
    }
    total_q += q;
    out.quantities.push_back(std::move(q));
  }
  out.price = a - b * total_q;
  for (size_t i = 0; i < costs.size(); ++i) {
    out.profits.push_back((out.price - costs[i]) * out.quantities[i]);
  }
  out.consumer_surplus = b * total_q * total_q / 2;
  return out;
}

InteriorCheck check_interior(const CournotParams& p) {
  auto fail = [](std::string why) { return InteriorCheck{false, std::move(why)}; };
  if (p.b <= 0) return fail("b <= 0");
  if (p.n < 2) return fail("n < 2");
  if (!(p.c - p.H > 0)) return fail("c - H <= 0");
  // Quantities in closed form; the smallest one must be positive.
  const Rational n1(p.n + 1);
  const Rational sym_q = (p.a - p.c) / (n1 * p.b);
  if (sym_q <= 0) return fail("symmetric market: a - c <= 0");
  for (const Rational* theta : {&p.H, &p.L}) {
    const Rational rival_q = (p.a - p.c - *theta) / (n1 * p.b);
    if (rival_q <= 0) {
      return fail("one-deviant market at cost c - " + FormatSig(*theta) +
                  ": rival quantity " + FormatSig(rival_q) + " <= 0");
    }
  }
  return InteriorCheck{true, ""};
}

DuopolyProfiles duopoly_profiles(const CournotParams& p, const Rational& pi_E,
                                 const Rational& cs_E) {
  ValidateParams(p);
  CournotParams two = p;
  two.n = 2;
  if (auto ic = check_interior(two); !ic.interior) {
    throw CornerSolutionError(ic.diagnostic);
  }
  const Rational m = p.a - p.c;
  const Rational nine_b = 9 * p.b;
  const Rational eighteen_b = 18 * p.b;
  auto sq = [](const Rational& x) { return Rational(x * x); };

  DuopolyProfiles out;
  out.profit.pi_F = sq(m) / nine_b;
  out.profit.pi_bar_H = sq(m + 2 * p.H) / nine_b;
  out.profit.pi_bar_L = sq(m + 2 * p.L) / nine_b;
  out.profit.pi_under_H = sq(m - p.H) / nine_b;
  out.profit.pi_under_L = sq(m - p.L) / nine_b;
  out.profit.pi_E = pi_E;
  out.surplus.cs_F = sq(2 * m) / eighteen_b;
  out.surplus.cs_E = cs_E;
  out.surplus.cs_L = sq(2 * m + p.L) / eighteen_b;
  out.surplus.cs_H = sq(2 * m + p.H) / eighteen_b;
  out.a1 = validate_baseline(out.profit);
  return out;
}

NFirmProfiles nfirm_profiles(const CournotParams& p, const Rational& theta) {
  ValidateParams(p);
  const Rational n1(p.n + 1);
  NFirmProfiles out;
  out.n = p.n;
  if (p.a - p.c <= 0) {
    throw CornerSolutionError("n = " + std::to_string(p.n) +
                              ", symmetric market: a - c <= 0");
  }
  const Rational share = (p.a - p.c) / n1;
  out.pi_F = share * share / p.b;
  CournotOutcome dev;
  try {
    dev = asymmetric_equilibrium(p.a, p.b, OneDeviant(p, theta));
  } catch (const CornerSolutionError& e) {
    throw CornerSolutionError("n = " + std::to_string(p.n) +
                              ", one firm at cost c - " + FormatSig(theta) +
                              " (" + e.what() + ")");
  }
  out.pi_bar = dev.profits[0];
  out.pi_under = dev.profits[1];
  return out;
}

ProfitProfile nfirm_profit_profile(const CournotParams& p, const Rational& pi_E) {
  NFirmProfiles hi = nfirm_profiles(p, p.H);
  NFirmProfiles lo = nfirm_profiles(p, p.L);
  return ProfitProfile{hi.pi_F,     hi.pi_bar,   lo.pi_bar,
                       hi.pi_under, lo.pi_under, pi_E};
}

}  // namespace acquihire
