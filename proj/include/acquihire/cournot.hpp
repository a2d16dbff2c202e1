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

// Linear-demand Cournot markets with constant marginal costs, used to
// generate profit and surplus profiles.

#ifndef ACQUIHIRE_COURNOT_HPP_
#define ACQUIHIRE_COURNOT_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "acquihire/model_core.hpp"
#include "acquihire/rational.hpp"

namespace acquihire {

// Inverse demand P = a - b * sum(q). An acquihire by a firm of type t lowers
// its marginal cost from c to c - t, t in {H, L}.
struct CournotParams {
  Rational a;
  Rational b;
  Rational c;
  Rational H;
  Rational L;
  int n = 2;
};

struct CournotOutcome {
  std::vector<Rational> quantities;
  Rational price;
  std::vector<Rational> profits;
  Rational consumer_surplus;
};

class CornerSolutionError : public std::runtime_error {
 public:
  explicit CornerSolutionError(const std::string& what)
      : std::runtime_error("corner solution unsupported: " + what) {}
};

// q_i = (a - n c_i + sum_{j != i} c_j) / ((n + 1) b). Throws
// CornerSolutionError if some q_i <= 0 and std::invalid_argument if b <= 0
// or fewer than one firm is given.
CournotOutcome asymmetric_equilibrium(const Rational& a, const Rational& b,
                                      const std::vector<Rational>& costs);

struct DuopolyProfiles {
  ProfitProfile profit;
  SurplusProfile surplus;
  ValidationReport a1;  // reported, not enforced
};

// Closed forms of the two-firm example. Throws CornerSolutionError when
// check_interior fails and ValidationError for invalid parameters.
DuopolyProfiles duopoly_profiles(const CournotParams& p, const Rational& pi_E,
                                 const Rational& cs_E);

struct NFirmProfiles {
  int n = 0;
  Rational pi_F;      // every firm, no acquihire
  Rational pi_bar;    // acquirer of type theta
  Rational pi_under;  // each rival of that acquirer
};

// Symmetric profit ((a - c)/(n + 1))^2 / b and the one-deviant profits from
// asymmetric_equilibrium with one cost at c - theta.
NFirmProfiles nfirm_profiles(const CournotParams& p, const Rational& theta);

// Reduced-form profile of an n-firm market: pi_bar_t / pi_under_t from the
// one-deviant equilibria for t in {H, L}.
ProfitProfile nfirm_profit_profile(const CournotParams& p, const Rational& pi_E);

struct InteriorCheck {
  bool interior = false;
  std::string diagnostic;  // empty when interior
};

// True iff the symmetric market and both one-deviant markets (types H and L)
// have strictly positive quantities for p.n firms, and costs stay positive.
InteriorCheck check_interior(const CournotParams& p);

}  // namespace acquihire

#endif  // ACQUIHIRE_COURNOT_HPP_
