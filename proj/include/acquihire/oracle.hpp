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

// Brute-force perfect Bayesian equilibrium solver for the finite versions
// of the acquisition games, and certification of the closed forms against
// it.
//
// A game is a tree. Nature draws a joint state (types, order of moves,
// shocks) at the root; a decision node's information set is its label,
// its mover and the state dimensions that mover observes there. Beliefs
// at an information set are distributions over its members (node, state).

#ifndef ACQUIHIRE_ORACLE_HPP_
#define ACQUIHIRE_ORACLE_HPP_

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acquihire/equilibrium.hpp"
#include "acquihire/labor_dynamics.hpp"
#include "acquihire/model_core.hpp"
#include "acquihire/partial_acq.hpp"
#include "acquihire/rational.hpp"

namespace acquihire {

class OracleSizeError : public std::length_error {
 public:
  explicit OracleSizeError(const std::string& what)
      : std::length_error("game too large: " + what) {}
};

struct Dimension {
  std::string name;
  std::vector<std::string> values;
  // Nature draws the dimension before decision nodes of this stage and
  // later; earlier nodes treat it as future uncertainty.
  int stage = 0;
};

struct State {
  std::vector<int> values;  // one entry per dimension
  Rational prob;
};

struct GameNode {
  enum class Kind { kDecision, kBranch, kChance, kTerminal };
  Kind kind = Kind::kTerminal;

  // kDecision
  int mover = 0;
  std::string label;
  std::vector<int> observes;  // dimension indices
  std::vector<std::string> actions;
  // Ties go to the earliest maximizing action; otherwise every maximizer
  // is sequentially rational.
  bool tie_first = false;
  int stage = 0;

  // kBranch follows state dimension `dim`; kChance uses probs.
  int dim = 0;
  std::vector<Rational> probs;

  std::vector<int> children;

  // kTerminal: per state, one payoff per player and an outcome label.
  std::vector<std::vector<Rational>> payoff;
  std::vector<std::string> outcome;
};

struct GameSpec {
  std::string variant;
  std::vector<std::string> players;
  std::vector<Dimension> dims;
  std::vector<State> states;
  std::vector<GameNode> nodes;
  int root = 0;
  // Labels of player 0's decision nodes that make up "firm 1 behavior".
  std::vector<std::string> focal_labels;

  int terminal_paths() const;  // terminals times states
};

// Throws std::invalid_argument for an unknown variant or inputs missing
// for it, ValidationError for invalid primitives.
struct GameInputs {
  std::optional<ProfitProfile> profile;
  std::optional<GainProfile> gains;
  std::optional<OwnershipCurves> curves;
  std::optional<ShockParams> shocks;
  Rational lambda = Frac(1, 2);
  Rational sigma = 0;
  int n = 3;                     // nfirm
  std::vector<Rational> shares;  // partial; empty means 11-point grid
  bool with_entrepreneur = true;  // baseline
  bool single_firm = false;       // baseline, firm 2 removed
};

GameSpec build_game(const std::string& variant, const GameInputs& in);

GameSpec BuildBaselineGame(const ProfitProfile& p, const Rational& lambda,
                           bool with_entrepreneur = true,
                           bool single_firm = false);
GameSpec BuildTechGame(const GainProfile& g, const Rational& lambda);
// Shares must lie in (0,1]; the analytic points of compute_thresholds are
// added when they exist.
GameSpec BuildPartialGame(const ProfitProfile& p, const OwnershipCurves& c,
                          const Rational& lambda,
                          std::vector<Rational> shares = {});
GameSpec BuildUncertainOrderGame(const ProfitProfile& p, const Rational& lambda);
// sigma in [0,1).
GameSpec BuildSurplusShareGame(const ProfitProfile& p, const Rational& sigma,
                               const Rational& lambda);
// `p` holds the n-firm market profits; 2 <= n <= 8.
GameSpec BuildNFirmGame(int n, const ProfitProfile& p, const Rational& lambda);
GameSpec BuildLaborGame(const ProfitProfile& p, const ShockParams& s,
                        const Rational& lambda);

struct InfoSet {
  std::string name;  // label[dim=value,...]
  std::string label;
  int mover = 0;
  std::vector<std::string> actions;
  bool tie_first = false;
  int depth = 0;
  struct Member {
    int node;
    int state;
  };
  std::vector<Member> members;
};

struct BeliefRecord {
  bool on_path = false;
  // "bayes", "consistent", "prior" or "point:<values>"
  std::string source;
  std::vector<Rational> weights;  // over the info set's members
  // The chosen action is optimal under every grid belief.
  bool belief_independent = false;
};

struct OracleEquilibrium {
  std::vector<int> strategy;  // action index per info set
  std::vector<BeliefRecord> beliefs;
  std::map<std::string, Rational> outcome_distribution;
  std::vector<Rational> expected_payoffs;  // ex ante, per player
  // Player 0's actions at the focal info sets, "name=action".
  std::vector<std::string> firm1_behavior;
  // Every off-path choice is optimal under the consistent belief: the
  // prior over the members reached with the fewest deviations from the
  // strategy. No punishing belief is needed.
  bool passive = false;
};

struct PBEResult {
  std::string variant;
  std::vector<InfoSet> info_sets;
  std::vector<OracleEquilibrium> equilibria;  // canonical order, capped
  long equilibria_found = 0;  // before the cap
  bool uniqueness_of_firm1_behavior = false;
  // Same, over passive equilibria only; false if there are none.
  bool unique_passive_firm1_behavior = false;
  long profiles_checked = 0;
  // The information structure is not ordered (a mover does not know its
  // position), so profiles were enumerated without pruning.
  bool unordered = false;

  int InfoSetIndex(const std::string& name) const;  // -1 if absent
  int FirstPassive() const;                          // -1 if none
  // Action chosen at `info_set` in equilibrium k.
  const std::string& ActionAt(int k, const std::string& info_set) const;
};

struct SolveOptions {
  int max_terminal_paths = 2000000;
  long max_search_steps = 20000000;
  int max_equilibria = 256;
  // Info set name -> action; the search only visits profiles that play
  // these. Unknown names or actions throw std::invalid_argument.
  std::map<std::string, std::string> fixed_actions;
};

PBEResult solve_pbe(const GameSpec& g, const SolveOptions& opt = {});

// Mover's expected continuation value of `action` at info set `iset` in
// equilibrium `eq`, under that equilibrium's belief there.
Rational ActionValue(const GameSpec& g, const PBEResult& r,
                     const OracleEquilibrium& eq, int iset, int action);

// Independent re-check: no one-shot deviation at any info set is
// profitable under the recorded beliefs, and on-path beliefs are Bayes.
bool OneShotDeviationCheck(const GameSpec& g, const PBEResult& r,
                           const OracleEquilibrium& eq);

// firm 1's action by type, read from the focal info sets of equilibrium k.
// Tech games report kSellTech with sells_to_high_only when the acquirer
// sells to a High rival and keeps against a Low one.
std::vector<StrategyEntry> Firm1Strategy(const GameSpec& g, const PBEResult& r,
                                         int k = 0);

struct AgreementReport {
  bool agree = true;
  std::vector<std::string> diffs;  // "field: closed=... oracle=..."

  void Add(const std::string& field, const std::string& closed,
           const std::string& oracle);
  void Merge(const AgreementReport& other, const std::string& prefix = "");
};

// Firm 1 behavior (must be unique among passive equilibria) and the
// outcome distribution of the first passive equilibrium; missing labels
// count as zero.
AgreementReport certify(const EquilibriumReport& closed, const GameSpec& g,
                        const PBEResult& oracle);

// The oracle's decision must equal Threshold::Admits at every grid point,
// so its flip lies within one grid step of the threshold.
AgreementReport certify_threshold(
    const Threshold& threshold, const std::vector<Rational>& grid,
    const std::function<bool(const Rational&)>& oracle_acts);

// The oracle is searched with the period-1 strategies of enumerate_labor
// fixed; the rates of the first equilibrium found are compared exactly.
struct LaborCertification {
  AgreementReport agreement;
  LaborOutcome oracle_rates;
  long equilibria = 0;  // supporting the fixed period-1 strategies
  bool passive = false;  // some such equilibrium has consistent beliefs
};
LaborCertification certify_labor(const ProfitProfile& p, const ShockParams& s,
                                 const Rational& lambda);

// Low firm 1 in the partial game: the closed-form choice must be optimal in
// the oracle and reach the oracle's value.
AgreementReport certify_partial(const PartialResult& closed, const GameSpec& g,
                                const PBEResult& oracle);

// Outcome rates of an equilibrium of BuildLaborGame.
LaborOutcome LaborRates(const OracleEquilibrium& eq);

}  // namespace acquihire

#endif  // ACQUIHIRE_ORACLE_HPP_
