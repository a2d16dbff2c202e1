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

#include "acquihire/oracle.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "acquihire/conventions.hpp"

namespace acquihire {
namespace {

using Kind = GameNode::Kind;

constexpr int kH = 0;
constexpr int kL = 1;

MatchType TypeOf(int v) { return v == kH ? MatchType::kHigh : MatchType::kLow; }
const char* TypeName(int v) { return v == kH ? "H" : "L"; }

class Builder {
 public:
  explicit Builder(std::string variant) { g_.variant = std::move(variant); }

  GameSpec& game() { return g_; }

  int AddDim(std::string name, std::vector<std::string> values, int stage = 0) {
    g_.dims.push_back({std::move(name), std::move(values), stage});
    return static_cast<int>(g_.dims.size()) - 1;
  }

  int Terminal(const std::function<std::vector<Rational>(const State&)>& pay,
               const std::function<std::string(const State&)>& label) {
    GameNode n;
    n.kind = Kind::kTerminal;
    for (const State& s : g_.states) {
      n.payoff.push_back(pay(s));
      n.outcome.push_back(label(s));
    }
    return Push(std::move(n));
  }

  int Decision(int mover, std::string label, std::vector<int> observes,
               std::vector<std::string> actions, std::vector<int> children,
               bool tie_first, int stage = 0) {
    GameNode n;
    n.kind = Kind::kDecision;
    n.mover = mover;
    n.label = std::move(label);
    n.observes = std::move(observes);
    n.actions = std::move(actions);
    n.children = std::move(children);
    n.tie_first = tie_first;
    n.stage = stage;
    return Push(std::move(n));
  }

  int Branch(int dim, std::vector<int> children) {
    GameNode n;
    n.kind = Kind::kBranch;
    n.dim = dim;
    n.children = std::move(children);
    return Push(std::move(n));
  }

  int Chance(std::vector<Rational> probs, std::vector<int> children) {
    GameNode n;
    n.kind = Kind::kChance;
    n.probs = std::move(probs);
    n.children = std::move(children);
    return Push(std::move(n));
  }

  GameSpec Finish(int root, std::vector<std::string> focal) {
    g_.root = root;
    g_.focal_labels = std::move(focal);
    return std::move(g_);
  }

 private:
  int Push(GameNode n) {
    g_.nodes.push_back(std::move(n));
    return static_cast<int>(g_.nodes.size()) - 1;
  }

  GameSpec g_;
};

// theta_1..theta_n, independent with P(H) = lambda.
void IndependentTypes(Builder& b, int n, const Rational& lambda) {
  for (int i = 1; i <= n; ++i) b.AddDim("theta" + std::to_string(i), {"H", "L"});
  const int count = 1 << n;
  for (int code = 0; code < count; ++code) {
    State s;
    s.prob = 1;
    for (int i = 0; i < n; ++i) {
      const int v = (code >> (n - 1 - i)) & 1;
      s.values.push_back(v);
      s.prob *= v == kH ? lambda : 1 - lambda;
    }
    b.game().states.push_back(std::move(s));
  }
}

std::string OwnerLabel(int firm, int type) {
  return "firm" + std::to_string(firm + 1) + "_acquihire_" + TypeName(type);
}

// Acquirer `owner` bought at `price`; rivals get pi_under.
std::vector<Rational> OwnerPayoffs(const ProfitProfile& p, int firms, int owner,
                                   int type, const Rational& price,
                                   bool with_entrepreneur) {
  std::vector<Rational> out(firms, p.pi_under(TypeOf(type)));
  out[owner] = p.pi_bar(TypeOf(type)) - price;
  if (with_entrepreneur) out.push_back(price);
  return out;
}

std::vector<Rational> NonePayoffs(const ProfitProfile& p, int firms,
                                  bool with_entrepreneur) {
  std::vector<Rational> out(firms, p.pi_F);
  if (with_entrepreneur) out.push_back(p.pi_E);
  return out;
}

void RequireLambdaOpenUnit(const Rational& lambda) { MatchPrior check(lambda); }

// ---------------------------------------------------------------------------
// Solver

struct Lookup {
  int states = 0;
  std::vector<int> iset_of;  // node * states + state -> info set, or -1

  int At(int node, int state) const { return iset_of[node * states + state]; }
};

// Continuation value for `player` from `node` in `state` under `strategy`.
void ValueInto(const GameSpec& g, const Lookup& lk,
               const std::vector<int>& strategy, int node, int state,
               int player, Rational& out) {
  for (;;) {
    const GameNode& n = g.nodes[node];
    switch (n.kind) {
      case Kind::kTerminal:
        out = n.payoff[state][player];
        return;
      case Kind::kBranch:
        node = n.children[g.states[state].values[n.dim]];
        break;
      case Kind::kDecision:
        node = n.children[strategy[lk.At(node, state)]];
        break;
      case Kind::kChance: {
        Rational acc = 0, tmp;
        for (size_t k = 0; k < n.children.size(); ++k) {
          ValueInto(g, lk, strategy, n.children[k], state, player, tmp);
          acc += n.probs[k] * tmp;
        }
        out = acc;
        return;
      }
    }
  }
}

// Walks every state from the root with its prior, calling visit at decision
// nodes and at terminals.
template <typename DecisionFn, typename TerminalFn>
void Walk(const GameSpec& g, const Lookup& lk, const std::vector<int>& strategy,
          int node, int state, const Rational& w, DecisionFn&& on_decision,
          TerminalFn&& on_terminal) {
  for (;;) {
    const GameNode& n = g.nodes[node];
    switch (n.kind) {
      case Kind::kTerminal:
        on_terminal(node, state, w);
        return;
      case Kind::kBranch:
        node = n.children[g.states[state].values[n.dim]];
        break;
      case Kind::kDecision:
        on_decision(node, state, w);
        node = n.children[strategy[lk.At(node, state)]];
        break;
      case Kind::kChance:
        for (size_t k = 0; k < n.children.size(); ++k) {
          Walk(g, lk, strategy, n.children[k], state, Rational(w * n.probs[k]),
               on_decision, on_terminal);
        }
        return;
    }
  }
}

bool OptimalUnder(const std::vector<std::vector<Rational>>& vals,
                  const std::vector<Rational>& w, int chosen, bool tie_first) {
  const size_t na = vals.size();
  std::vector<Rational> e(na, Rational(0));
  for (size_t a = 0; a < na; ++a) {
    for (size_t m = 0; m < w.size(); ++m) {
      if (w[m] != 0) e[a] += w[m] * vals[a][m];
    }
  }
  for (size_t b = 0; b < na; ++b) {
    if (static_cast<int>(b) == chosen) continue;
    if (e[b] > e[chosen]) return false;
    if (tie_first && static_cast<int>(b) < chosen && e[b] == e[chosen]) {
      return false;
    }
  }
  return true;
}

class Solver {
 public:
  Solver(const GameSpec& g, const SolveOptions& opt) : g_(g), opt_(opt) {}

  PBEResult Run() {
    if (g_.terminal_paths() > opt_.max_terminal_paths) {
      throw OracleSizeError(std::to_string(g_.terminal_paths()) +
                            " terminal paths exceed the bound of " +
                            std::to_string(opt_.max_terminal_paths));
    }
    BuildInfoSets();
    Order();
    BuildPaths();
    fixed_.assign(r_.info_sets.size(), -1);
    for (const auto& [name, action] : opt_.fixed_actions) {
      const int id = r_.InfoSetIndex(name);
      if (id < 0) throw std::invalid_argument("no info set " + name);
      const auto& acts = r_.info_sets[id].actions;
      const auto it = std::find(acts.begin(), acts.end(), action);
      if (it == acts.end()) {
        throw std::invalid_argument("no action " + action + " at " + name);
      }
      fixed_[id] = static_cast<int>(it - acts.begin());
    }
    assigned_.assign(r_.info_sets.size(), 0);
    strategy_.assign(r_.info_sets.size(), 0);
    vals_.assign(r_.info_sets.size(), {});
    Dfs(0);
    r_.uniqueness_of_firm1_behavior = r_.equilibria_found > 0 && !firm1_split_;
    r_.unique_passive_firm1_behavior = passive_found_ && !passive_split_;
    r_.unordered = !prune_;
    return std::move(r_);
  }

  const Lookup& lookup() const { return lk_; }

 private:
  void BuildInfoSets() {
    const int S = static_cast<int>(g_.states.size());
    lk_.states = S;
    lk_.iset_of.assign(g_.nodes.size() * S, -1);
    member_pos_.assign(g_.nodes.size() * S, -1);
    // (node, state) pairs reachable from the root under some strategy.
    std::vector<char> live(g_.nodes.size() * S, 0);
    std::function<void(int, int)> mark = [&](int node, int state) {
      live[node * S + state] = 1;
      const GameNode& n = g_.nodes[node];
      if (n.kind == Kind::kBranch) {
        mark(n.children[g_.states[state].values[n.dim]], state);
      } else {
        for (int c : n.children) mark(c, state);
      }
    };
    for (int s = 0; s < S; ++s) mark(g_.root, s);
    std::map<std::tuple<std::string, int, std::vector<int>>, int> index;
    for (size_t node = 0; node < g_.nodes.size(); ++node) {
      const GameNode& n = g_.nodes[node];
      if (n.kind != Kind::kDecision) continue;
      for (int s = 0; s < S; ++s) {
        if (!live[node * S + s]) continue;
        std::vector<int> sig;
        for (int d : n.observes) sig.push_back(g_.states[s].values[d]);
        auto key = std::make_tuple(n.label, n.mover, sig);
        auto it = index.find(key);
        int id;
        if (it == index.end()) {
          id = static_cast<int>(r_.info_sets.size());
          index.emplace(key, id);
          InfoSet is;
          is.label = n.label;
          is.mover = n.mover;
          is.actions = n.actions;
          is.tie_first = n.tie_first;
          is.name = n.label + "[";
          for (size_t k = 0; k < n.observes.size(); ++k) {
            const Dimension& dim = g_.dims[n.observes[k]];
            if (k) is.name += ",";
            is.name += dim.name + "=" + dim.values[sig[k]];
          }
          is.name += "]";
          r_.info_sets.push_back(std::move(is));
        } else {
          id = it->second;
          const InfoSet& is = r_.info_sets[id];
          if (is.actions != n.actions || is.tie_first != n.tie_first) {
            throw std::invalid_argument("info set " + is.name +
                                        " mixes action sets");
          }
        }
        member_pos_[node * S + s] =
            static_cast<int>(r_.info_sets[id].members.size());
        r_.info_sets[id].members.push_back({static_cast<int>(node), s});
        lk_.iset_of[node * S + s] = id;
      }
    }
  }

  // First decision info sets reached from (node, state) along any path.
  void NextSets(int node, int state, std::set<int>& out) const {
    for (;;) {
      const GameNode& n = g_.nodes[node];
      switch (n.kind) {
        case Kind::kTerminal:
          return;
        case Kind::kBranch:
          node = n.children[g_.states[state].values[n.dim]];
          break;
        case Kind::kDecision:
          out.insert(lk_.At(node, state));
          return;
        case Kind::kChance:
          for (int c : n.children) NextSets(c, state, out);
          return;
      }
    }
  }

  // Returns -1 on a cycle.
  int Height(int id, std::vector<int>& h, std::vector<int>& mark,
             const std::vector<std::set<int>>& next) {
    if (mark[id] == 2) return h[id];
    if (mark[id] == 1) return -1;
    mark[id] = 1;
    int best = 0;
    for (int j : next[id]) {
      const int hj = Height(j, h, mark, next);
      if (hj < 0) return -1;
      best = std::max(best, 1 + hj);
    }
    mark[id] = 2;
    h[id] = best;
    return best;
  }

  // Deepest info sets first, so every continuation is fixed when a set is
  // reached in the search. In multi-stage games the sets before the last
  // stage are enumerated first, top down, so that beliefs at later stages
  // are known when those are searched.
  void Order() {
    const size_t K = r_.info_sets.size();
    std::vector<std::set<int>> next(K);
    for (size_t id = 0; id < K; ++id) {
      for (const auto& m : r_.info_sets[id].members) {
        for (int c : g_.nodes[m.node].children) NextSets(c, m.state, next[id]);
      }
    }
    std::vector<int> h(K, 0), mark(K, 0);
    for (size_t id = 0; id < K && prune_; ++id) {
      prune_ = Height(static_cast<int>(id), h, mark, next) >= 0;
    }
    if (!prune_) std::fill(h.begin(), h.end(), 0);
    std::vector<int> stage(K, 0);
    int last = 0;
    for (size_t id = 0; id < K; ++id) {
      stage[id] = g_.nodes[r_.info_sets[id].members.front().node].stage;
      last = std::max(last, stage[id]);
    }
    bool staged = prune_ && last > 0;
    for (size_t id = 0; id < K && staged; ++id) {
      for (int j : next[id]) staged = staged && stage[j] >= stage[id];
    }
    free_.assign(K, !prune_);
    if (staged) {
      for (size_t id = 0; id < K; ++id) free_[id] = stage[id] < last;
    }
    order_.resize(K);
    for (size_t id = 0; id < K; ++id) {
      order_[id] = static_cast<int>(id);
      r_.info_sets[id].depth = h[id];
    }
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (free_[a] != free_[b]) return static_cast<bool>(free_[a]);
      return free_[a] ? h[a] > h[b] : h[a] < h[b];
    });
  }

  // Root-to-member path of every member: decisions taken and the prior
  // times chance probabilities.
  void BuildPaths() {
    const size_t K = r_.info_sets.size();
    paths_.assign(K, {});
    ancestors_.assign(K, {});
    for (size_t id = 0; id < K; ++id) {
      paths_[id].resize(r_.info_sets[id].members.size());
    }
    std::vector<std::pair<int, int>> trail;
    std::function<void(int, int, const Rational&)> visit =
        [&](int node, int state, const Rational& w) {
          const GameNode& n = g_.nodes[node];
          switch (n.kind) {
            case Kind::kTerminal:
              return;
            case Kind::kBranch:
              visit(n.children[g_.states[state].values[n.dim]], state, w);
              return;
            case Kind::kChance:
              for (size_t c = 0; c < n.children.size(); ++c) {
                visit(n.children[c], state, Rational(w * n.probs[c]));
              }
              return;
            case Kind::kDecision: {
              const int id = lk_.At(node, state);
              const auto& mem = r_.info_sets[id].members;
              for (size_t m = 0; m < mem.size(); ++m) {
                if (mem[m].node == node && mem[m].state == state) {
                  paths_[id][m] = {trail, w};
                  for (const auto& [j, a] : trail) ancestors_[id].insert(j);
                  break;
                }
              }
              for (size_t c = 0; c < n.children.size(); ++c) {
                trail.emplace_back(id, static_cast<int>(c));
                visit(n.children[c], state, w);
                trail.pop_back();
              }
              return;
            }
          }
        };
    for (size_t s = 0; s < g_.states.size(); ++s) {
      visit(g_.root, static_cast<int>(s), g_.states[s].prob);
    }
  }

  std::vector<Rational> Consistent(int id) const {
    const auto& paths = paths_[id];
    std::vector<int> devs(paths.size(), 0);
    int fewest = -1;
    for (size_t m = 0; m < paths.size(); ++m) {
      for (const auto& [j, a] : paths[m].first) devs[m] += strategy_[j] != a;
      if (paths[m].second != 0 && (fewest < 0 || devs[m] < fewest)) {
        fewest = devs[m];
      }
    }
    // Reached only through zero-probability chance moves: every member
    // with the fewest deviations counts equally.
    const bool null = fewest < 0;
    if (null) fewest = *std::min_element(devs.begin(), devs.end());
    std::vector<Rational> out(paths.size(), Rational(0));
    for (size_t m = 0; m < paths.size(); ++m) {
      if (devs[m] == fewest) out[m] = null ? Rational(1) : paths[m].second;
    }
    return out;
  }

  bool AncestorsAssigned(int id) const {
    for (int j : ancestors_[id]) {
      if (!assigned_[j]) return false;
    }
    return true;
  }

  std::vector<Rational> Reach(int id) const {
    std::vector<Rational> out;
    for (const auto& [trail, w] : paths_[id]) {
      bool on = true;
      for (const auto& [j, a] : trail) on = on && strategy_[j] == a;
      out.push_back(on ? w : Rational(0));
    }
    return out;
  }

  // With the beliefs at `id` determined, keep only actions that are
  // sequentially rational under them.
  bool SequentiallyRational(int id, int a) const {
    const InfoSet& is = r_.info_sets[id];
    const std::vector<Rational> reach = Reach(id);
    if (std::any_of(reach.begin(), reach.end(),
                    [](const Rational& x) { return x != 0; })) {
      return OptimalUnder(vals_[id], reach, a, is.tie_first);
    }
    return AnyBelief(id, [&](const std::string&, const std::vector<Rational>& w) {
      return OptimalUnder(vals_[id], w, a, is.tie_first);
    });
  }

  void ComputeVals(int id) {
    const InfoSet& is = r_.info_sets[id];
    auto& v = vals_[id];
    v.assign(is.actions.size(), std::vector<Rational>(is.members.size()));
    for (size_t a = 0; a < is.actions.size(); ++a) {
      for (size_t m = 0; m < is.members.size(); ++m) {
        const auto& mem = is.members[m];
        ValueInto(g_, lk_, strategy_, g_.nodes[mem.node].children[a],
                  mem.state, is.mover, v[a][m]);
      }
    }
  }

  bool Dominated(int id, int a) const {
    const InfoSet& is = r_.info_sets[id];
    const auto& v = vals_[id];
    for (size_t b = 0; b < v.size(); ++b) {
      if (static_cast<int>(b) == a) continue;
      const bool weak = is.tie_first && static_cast<int>(b) < a;
      bool all = true;
      for (size_t m = 0; m < is.members.size() && all; ++m) {
        all = weak ? v[b][m] >= v[a][m] : v[b][m] > v[a][m];
      }
      if (all) return true;
    }
    return false;
  }

  void Dfs(size_t k) {
    if (++steps_ > opt_.max_search_steps) {
      throw OracleSizeError("search exceeded " +
                            std::to_string(opt_.max_search_steps) + " steps");
    }
    if (k == order_.size()) {
      FinalCheck();
      return;
    }
    const int id = order_[k];
    const bool search = !free_[id];
    if (search) ComputeVals(id);
    const bool beliefs_known = search && AncestorsAssigned(id);
    assigned_[id] = 1;
    for (size_t a = 0; a < r_.info_sets[id].actions.size(); ++a) {
      const int ai = static_cast<int>(a);
      if (fixed_[id] >= 0 && fixed_[id] != ai) continue;
      if (search && Dominated(id, ai)) continue;
      if (beliefs_known && !SequentiallyRational(id, ai)) continue;
      strategy_[id] = ai;
      Dfs(k + 1);
    }
    assigned_[id] = 0;
  }

  // Off-path candidates: the consistent belief, the prior over members,
  // then the prior restricted to each combination of node and already-drawn
  // unobserved dimensions.
  using Belief = std::pair<std::string, std::vector<Rational>>;

  // Calls f(name, weights) on each grid belief in order until it returns
  // true; reports whether it did.
  template <typename F>
  bool AnyBelief(int id, F&& f) const {
    if (f(std::string("consistent"), Consistent(id))) return true;
    if (static_grid_.size() != r_.info_sets.size()) {
      static_grid_.assign(r_.info_sets.size(), std::nullopt);
    }
    auto& cached = static_grid_[id];
    if (!cached) cached = StaticGrid(id);
    for (const auto& [name, w] : *cached) {
      if (f(name, w)) return true;
    }
    return false;
  }

  // The strategy-independent part of the grid.
  std::vector<Belief> StaticGrid(int id) const {
    const InfoSet& is = r_.info_sets[id];
    std::vector<Belief> out;
    std::vector<Rational> prior;
    for (const auto& m : is.members) prior.push_back(g_.states[m.state].prob);
    if (std::any_of(prior.begin(), prior.end(),
                    [](const Rational& x) { return x != 0; })) {
      out.emplace_back("prior", prior);
    }
    const GameNode& first = g_.nodes[is.members.front().node];
    std::vector<int> hidden;
    for (size_t d = 0; d < g_.dims.size(); ++d) {
      const bool seen = std::find(first.observes.begin(), first.observes.end(),
                                  static_cast<int>(d)) != first.observes.end();
      if (!seen && g_.dims[d].stage <= first.stage) hidden.push_back(d);
    }
    std::map<std::pair<int, std::vector<int>>, std::vector<Rational>> groups;
    for (size_t m = 0; m < is.members.size(); ++m) {
      std::vector<int> key;
      for (int d : hidden) key.push_back(g_.states[is.members[m].state].values[d]);
      if (prior[m] == 0) continue;
      auto& w = groups[{is.members[m].node, key}];
      if (w.empty()) w.assign(is.members.size(), Rational(0));
      w[m] = prior[m];
    }
    if (groups.size() < 2) return out;
    for (auto& [key, w] : groups) {
      std::string name = "point:";
      if (std::any_of(is.members.begin(), is.members.end(),
                      [&](const auto& m) { return m.node != is.members[0].node; })) {
        name += "node" + std::to_string(key.first);
      }
      for (size_t k = 0; k < hidden.size(); ++k) {
        if (name.back() != ':') name += ",";
        name += g_.dims[hidden[k]].name + "=" + g_.dims[hidden[k]].values[key.second[k]];
      }
      out.emplace_back(name, w);
    }
    return out;
  }

  static std::vector<Rational> Normalize(std::vector<Rational> w) {
    Rational total = 0;
    for (const Rational& x : w) total += x;
    for (Rational& x : w) x /= total;
    return w;
  }

  void FinalCheck() {
    ++r_.profiles_checked;
    const size_t K = r_.info_sets.size();
    for (size_t id = 0; id < K; ++id) {
      if (free_[id]) ComputeVals(static_cast<int>(id));
    }
    // Reach weight per member.
    std::vector<std::vector<Rational>> reach(K);
    for (size_t id = 0; id < K; ++id) {
      reach[id].assign(r_.info_sets[id].members.size(), Rational(0));
    }
    for (size_t s = 0; s < g_.states.size(); ++s) {
      Walk(
          g_, lk_, strategy_, g_.root, static_cast<int>(s), g_.states[s].prob,
          [&](int node, int state, const Rational& w) {
            reach[lk_.At(node, state)][member_pos_[node * lk_.states + state]] += w;
          },
          [](int, int, const Rational&) {});
    }

    std::vector<BeliefRecord> beliefs(K);
    for (size_t id = 0; id < K; ++id) {
      const InfoSet& is = r_.info_sets[id];
      const int chosen = strategy_[id];
      BeliefRecord& b = beliefs[id];
      bool any = false;
      for (const Rational& x : reach[id]) any = any || x != 0;
      if (any) {
        if (!OptimalUnder(vals_[id], reach[id], chosen, is.tie_first)) return;
        b.on_path = true;
        b.source = "bayes";
        b.weights = Normalize(reach[id]);
      } else {
        const bool found = AnyBelief(
            static_cast<int>(id),
            [&](const std::string& name, const std::vector<Rational>& w) {
              if (!OptimalUnder(vals_[id], w, chosen, is.tie_first)) return false;
              b.source = name;
              b.weights = Normalize(w);
              return true;
            });
        if (!found) return;
      }
    }

    OracleEquilibrium eq;
    eq.strategy = strategy_;
    for (size_t id = 0; id < K; ++id) {
      const InfoSet& is = r_.info_sets[id];
      if (is.mover == 0 &&
          std::find(g_.focal_labels.begin(), g_.focal_labels.end(), is.label) !=
              g_.focal_labels.end()) {
        eq.firm1_behavior.push_back(is.name + "=" + is.actions[strategy_[id]]);
      }
    }
    eq.passive = std::all_of(beliefs.begin(), beliefs.end(),
                             [](const BeliefRecord& b) {
                               return b.on_path || b.source == "consistent";
                             });
    ++r_.equilibria_found;
    if (r_.equilibria_found == 1) {
      first_behavior_ = eq.firm1_behavior;
    } else if (eq.firm1_behavior != first_behavior_) {
      firm1_split_ = true;
    }
    if (eq.passive) {
      if (!passive_found_) {
        passive_found_ = true;
        passive_behavior_ = eq.firm1_behavior;
      } else if (eq.firm1_behavior != passive_behavior_) {
        passive_split_ = true;
      }
    }
    if (static_cast<int>(r_.equilibria.size()) >= opt_.max_equilibria) return;

    for (size_t id = 0; id < K; ++id) {
      beliefs[id].belief_independent = !AnyBelief(
          static_cast<int>(id),
          [&](const std::string&, const std::vector<Rational>& w) {
            return !OptimalUnder(vals_[id], w, strategy_[id],
                                 r_.info_sets[id].tie_first);
          });
    }
    eq.beliefs = std::move(beliefs);
    eq.expected_payoffs.assign(g_.players.size(), Rational(0));
    for (size_t s = 0; s < g_.states.size(); ++s) {
      Walk(
          g_, lk_, strategy_, g_.root, static_cast<int>(s), g_.states[s].prob,
          [](int, int, const Rational&) {},
          [&](int node, int state, const Rational& w) {
            const GameNode& t = g_.nodes[node];
            eq.outcome_distribution[t.outcome[state]] += w;
            for (size_t p = 0; p < g_.players.size(); ++p) {
              eq.expected_payoffs[p] += w * t.payoff[state][p];
            }
          });
    }
    r_.equilibria.push_back(std::move(eq));
  }

  const GameSpec& g_;
  SolveOptions opt_;
  PBEResult r_;
  Lookup lk_;
  std::vector<int> order_;
  std::vector<int> strategy_;
  std::vector<std::vector<std::vector<Rational>>> vals_;
  mutable std::vector<std::optional<std::vector<Belief>>> static_grid_;
  long steps_ = 0;
  std::vector<std::string> first_behavior_;
  bool firm1_split_ = false;
  std::vector<std::string> passive_behavior_;
  bool passive_found_ = false;
  bool passive_split_ = false;
  bool prune_ = true;
  std::vector<char> free_;      // enumerated without pruning
  std::vector<int> fixed_;      // action index, or -1
  std::vector<int> member_pos_;  // node * states + state -> member index
  std::vector<char> assigned_;  // fixed on the current search branch
  std::vector<std::vector<std::pair<std::vector<std::pair<int, int>>, Rational>>>
      paths_;
  std::vector<std::set<int>> ancestors_;
};

Lookup LookupFor(const GameSpec& g, const PBEResult& r) {
  Lookup lk;
  lk.states = static_cast<int>(g.states.size());
  lk.iset_of.assign(g.nodes.size() * lk.states, -1);
  for (size_t id = 0; id < r.info_sets.size(); ++id) {
    for (const auto& m : r.info_sets[id].members) {
      lk.iset_of[m.node * lk.states + m.state] = static_cast<int>(id);
    }
  }
  return lk;
}

std::string ActionName(const StrategyEntry& e) {
  switch (e.action) {
    case Action::kAcquihire:
    case Action::kSellTech:
      return "Acquihire";
    case Action::kNothing:
      return "Nothing";
    case Action::kInvest:
      return "Invest:" + (e.share ? e.share->get_str() : std::string("?"));
  }
  return "?";
}

}  // namespace

int GameSpec::terminal_paths() const {
  int terminals = 0;
  for (const GameNode& n : nodes) terminals += n.kind == Kind::kTerminal;
  return terminals * static_cast<int>(states.size());
}

int PBEResult::InfoSetIndex(const std::string& name) const {
  for (size_t i = 0; i < info_sets.size(); ++i) {
    if (info_sets[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int PBEResult::FirstPassive() const {
  for (size_t k = 0; k < equilibria.size(); ++k) {
    if (equilibria[k].passive) return static_cast<int>(k);
  }
  return -1;
}

const std::string& PBEResult::ActionAt(int k, const std::string& name) const {
  const int id = InfoSetIndex(name);
  if (id < 0) throw std::out_of_range("no info set " + name);
  return info_sets[id].actions[equilibria.at(k).strategy[id]];
}

// ---------------------------------------------------------------------------
// Builders

GameSpec BuildBaselineGame(const ProfitProfile& p, const Rational& lambda,
                           bool with_entrepreneur, bool single_firm) {
  RequireBaseline(p);
  RequireLambdaOpenUnit(lambda);
  const int firms = single_firm ? 1 : 2;
  Builder b(single_firm ? "baseline_single" : "baseline");
  b.game().players = {"firm1"};
  if (!single_firm) b.game().players.push_back("firm2");
  if (with_entrepreneur) b.game().players.push_back("entrepreneur");
  const int ent = firms;
  IndependentTypes(b, firms, lambda);
  const bool at = conventions::kAcquihireAtThreshold;
  const bool accept = conventions::kEntrepreneurAcceptsAtReservation;

  auto none = [&] {
    return b.Terminal([&](const State&) { return NonePayoffs(p, firms, with_entrepreneur); },
                      [](const State&) { return std::string(kOutcomeNone); });
  };
  auto owner = [&](int firm) {
    return b.Terminal(
        [&, firm](const State& s) {
          return OwnerPayoffs(p, firms, firm, s.values[firm], p.pi_E,
                              with_entrepreneur);
        },
        [firm](const State& s) { return OwnerLabel(firm, s.values[firm]); });
  };
  // Bid pi_E by `firm`; on rejection continue at `on_reject`.
  auto bid = [&](int firm, int on_reject, const std::string& label) {
    const int won = owner(firm);
    if (!with_entrepreneur) return won;
    return b.Decision(ent, label, {}, {"Accept", "Reject"}, {won, on_reject},
                      accept);
  };
  auto stage2 = [&](const std::string& label) {
    const int acquire = bid(1, none(), "e_" + label);
    return b.Decision(1, label, {1}, {"Acquihire", "Nothing"},
                      {acquire, none()}, at);
  };

  int root;
  if (single_firm) {
    root = b.Decision(0, "f1", {0}, {"Acquihire", "Nothing"},
                      {bid(0, none(), "e_f1"), none()}, at);
  } else {
    const int after_reject = stage2("f2_after_reject");
    const int after_nothing = stage2("f2");
    root = b.Decision(0, "f1", {0}, {"Acquihire", "Nothing"},
                      {bid(0, after_reject, "e_f1"), after_nothing}, at);
  }
  return b.Finish(root, {"f1"});
}

GameSpec BuildTechGame(const GainProfile& gp, const Rational& lambda) {
  RequireGains(gp);
  RequireLambdaOpenUnit(lambda);
  Builder b("tech");
  b.game().players = {"firm1", "firm2", "entrepreneur"};
  IndependentTypes(b, 2, lambda);
  const Rational& tau = gp.tau;
  const bool at = conventions::kAcquihireAtThreshold;

  // Owner i of type ti facing j of type tj, with or without a sale; the
  // split-the-surplus price is the midpoint of the seller's loss and the
  // buyer's gain.
  auto payoffs = [&](int owner, const State& s, bool sale) {
    const int other = 1 - owner;
    const MatchType ti = TypeOf(s.values[owner]);
    const MatchType tj = TypeOf(s.values[other]);
    std::vector<Rational> out(3);
    if (!sale) {
      out[owner] = gp.pi_F + gp.g_bar(ti) - gp.pi_E;
      out[other] = gp.pi_F - gp.g_under(ti);
    } else {
      const Rational loss = tau * (gp.g_bar(ti) + gp.g_under(tj));
      const Rational gain = tau * (gp.g_bar(tj) + gp.g_under(ti));
      const Rational q = (loss + gain) / 2;
      out[owner] = gp.pi_F + (1 - tau) * gp.g_bar(ti) - tau * gp.g_under(tj) -
                   gp.pi_E + q;
      out[other] = gp.pi_F - (1 - tau) * gp.g_under(ti) + tau * gp.g_bar(tj) - q;
    }
    out[2] = gp.pi_E;
    return out;
  };
  auto none = [&] {
    return b.Terminal(
        [&](const State&) {
          return std::vector<Rational>{gp.pi_F, gp.pi_F, gp.pi_E};
        },
        [](const State&) { return std::string(kOutcomeNone); });
  };
  auto resale = [&](int owner) {
    const std::string o = std::to_string(owner + 1);
    const std::string r = std::to_string(2 - owner);
    const int keep = b.Terminal(
        [&, owner](const State& s) { return payoffs(owner, s, false); },
        [owner](const State& s) { return OwnerLabel(owner, s.values[owner]); });
    const int sold = b.Terminal(
        [&, owner](const State& s) { return payoffs(owner, s, true); },
        [owner](const State& s) {
          return OwnerLabel(owner, s.values[owner]) + "_sells_tech";
        });
    const int keep2 = b.Terminal(
        [&, owner](const State& s) { return payoffs(owner, s, false); },
        [owner](const State& s) { return OwnerLabel(owner, s.values[owner]); });
    // Types are revealed at the bargaining table.
    const bool trade_at_zero = conventions::kTradeAtZeroSurplus;
    const int buyer =
        b.Decision(1 - owner, "f" + r + "_buy", {0, 1},
                   trade_at_zero ? std::vector<std::string>{"Accept", "Reject"}
                                 : std::vector<std::string>{"Reject", "Accept"},
                   trade_at_zero ? std::vector<int>{sold, keep2}
                                 : std::vector<int>{keep2, sold},
                   true, 0);
    return b.Decision(owner, "f" + o + "_resale", {0, 1},
                      trade_at_zero ? std::vector<std::string>{"Offer", "Keep"}
                                    : std::vector<std::string>{"Keep", "Offer"},
                      trade_at_zero ? std::vector<int>{buyer, keep}
                                    : std::vector<int>{keep, buyer},
                      true, 0);
  };
  auto stage2 = [&](const std::string& label) {
    const int e = b.Decision(2, "e_" + label, {}, {"Accept", "Reject"},
                             {resale(1), none()}, true);
    return b.Decision(1, label, {1}, {"Acquihire", "Nothing"}, {e, none()}, at);
  };
  const int after_reject = stage2("f2_after_reject");
  const int after_nothing = stage2("f2");
  const int e1 = b.Decision(2, "e_f1", {}, {"Accept", "Reject"},
                            {resale(0), after_reject}, true);
  const int root =
      b.Decision(0, "f1", {0}, {"Acquihire", "Nothing"}, {e1, after_nothing}, at);
  return b.Finish(root, {"f1", "f1_resale"});
}

GameSpec BuildPartialGame(const ProfitProfile& p, const OwnershipCurves& c,
                          const Rational& lambda, std::vector<Rational> shares) {
  RequireBaseline(p);
  RequireLambdaOpenUnit(lambda);
  if (shares.empty()) {
    for (int k = 1; k <= 10; ++k) shares.push_back(Frac(k, 10));
  }
  const PartialThresholds t = compute_thresholds(p, c);
  for (const auto& s : {t.s_hat, t.s_L, t.s_H}) {
    if (s && *s > 0) shares.push_back(*s);
  }
  for (const Rational& s : shares) {
    if (s <= 0 || s > 1) {
      throw ValidationError("shares", "share " + FormatSig(s) +
                                          " must lie in (0,1]");
    }
  }
  std::sort(shares.begin(), shares.end());
  shares.erase(std::unique(shares.begin(), shares.end()), shares.end());

  Builder b("partial");
  b.game().players = {"firm1", "firm2"};
  IndependentTypes(b, 2, lambda);
  const bool at = conventions::kAcquihireAtThreshold;

  auto node_none = [&] {
    return b.Terminal(
        [&](const State&) { return std::vector<Rational>{p.pi_F, p.pi_F}; },
        [](const State&) { return std::string(kOutcomeNone); });
  };
  auto owner = [&](int firm) {
    return b.Terminal(
        [&, firm](const State& s) {
          return OwnerPayoffs(p, 2, firm, s.values[firm], p.pi_E, false);
        },
        [firm](const State& s) { return OwnerLabel(firm, s.values[firm]); });
  };

  std::vector<std::string> actions = {"Acquihire", "Nothing"};
  std::vector<int> children = {owner(0)};
  children.push_back(b.Decision(1, "f2", {1}, {"Acquihire", "Nothing"},
                                {owner(1), node_none()}, at));
  for (size_t k = 0; k < shares.size(); ++k) {
    const Rational s = shares[k];
    const Rational v = c.v(s);
    const Rational beta = c.beta(s);
    const Rational delta = c.delta(s);
    // Rival keeps out: the startup survives with firm 1's stake.
    auto invest_stays = [&, delta] {
      return b.Terminal(
          [&, delta](const State&) {
            return std::vector<Rational>{p.pi_F + delta, p.pi_F};
          },
          [](const State&) { return std::string(kOutcomeFirm1Invest); });
    };
    const int both = b.Terminal(
        [&, v, delta](const State& st) {
          const MatchType t2 = TypeOf(st.values[1]);
          return std::vector<Rational>{
              p.pi_F + delta, p.pi_bar(t2) - v - p.pi_F + p.pi_under(t2)};
        },
        [](const State& st) { return OwnerLabel(1, st.values[1]); });
    const int taken = b.Terminal(
        [&, v, delta](const State& st) {
          const MatchType t2 = TypeOf(st.values[1]);
          return std::vector<Rational>{p.pi_under(t2) + delta, p.pi_bar(t2) - v};
        },
        [](const State& st) { return OwnerLabel(1, st.values[1]); });
    const int blocked = invest_stays();
    const int entrepreneur_only =
        b.Chance({beta, Rational(1 - beta)}, {blocked, taken});
    const int rival = b.Decision(
        1, "f2_invest:" + s.get_str(), {1},
        {"Both", "EntrepreneurOnly", "Nothing"},
        {both, entrepreneur_only, invest_stays()},
        conventions::kRivalPrefersActiveBid);
    actions.push_back("Invest:" + s.get_str());
    children.push_back(rival);
  }
  // Firm 1's ties are reported, not broken: every maximizer is listed.
  const int root = b.Decision(0, "f1", {0}, actions, children, false);
  return b.Finish(root, {"f1"});
}

GameSpec BuildUncertainOrderGame(const ProfitProfile& p, const Rational& lambda) {
  RequireBaseline(p);
  RequireLambdaOpenUnit(lambda);
  Builder b("uncertain_order");
  b.game().players = {"firm1", "firm2", "entrepreneur"};
  b.AddDim("theta1", {"H", "L"});
  b.AddDim("theta2", {"H", "L"});
  const int order = b.AddDim("order", {"firm1_first", "firm2_first"});
  for (int code = 0; code < 8; ++code) {
    State s;
    s.values = {(code >> 2) & 1, (code >> 1) & 1, code & 1};
    s.prob = (s.values[0] == kH ? lambda : 1 - lambda) *
             (s.values[1] == kH ? lambda : 1 - lambda) * Frac(1, 2);
    b.game().states.push_back(std::move(s));
  }
  const bool at = conventions::kAcquihireAtThreshold;
  auto none = [&] {
    return b.Terminal(
        [&](const State&) { return NonePayoffs(p, 2, true); },
        [](const State&) { return std::string(kOutcomeNone); });
  };
  auto owner = [&](int firm) {
    return b.Terminal(
        [&, firm](const State& s) {
          return OwnerPayoffs(p, 2, firm, s.values[firm], p.pi_E, true);
        },
        [firm](const State& s) { return OwnerLabel(firm, s.values[firm]); });
  };
  // A firm does not observe whether the other has moved: one label per
  // firm for both positions.
  auto move = [&](int firm, int next) {
    const std::string f = std::to_string(firm + 1);
    const int e = b.Decision(2, "e_f" + f, {}, {"Accept", "Reject"},
                             {owner(firm), next}, true);
    return b.Decision(firm, "f" + f, {firm}, {"Acquihire", "Nothing"},
                      {e, next}, at);
  };
  auto sequence = [&](int first) {
    const int second = 1 - first;
    const int last = move(second, none());
    // After a rejected bid the second mover gets its turn as well.
    const std::string f = std::to_string(first + 1);
    const int last_after_reject = move(second, none());
    const int e = b.Decision(2, "e_f" + f, {}, {"Accept", "Reject"},
                             {owner(first), last_after_reject}, true);
    return b.Decision(first, "f" + f, {first}, {"Acquihire", "Nothing"},
                      {e, last}, at);
  };
  const int first1 = sequence(0);
  const int first2 = sequence(1);
  const int root = b.Branch(order, {first1, first2});
  return b.Finish(root, {"f1"});
}

GameSpec BuildSurplusShareGame(const ProfitProfile& p, const Rational& sigma,
                               const Rational& lambda) {
  RequireBaseline(p);
  RequireLambdaOpenUnit(lambda);
  if (sigma < 0 || sigma >= 1) {
    throw ValidationError("sigma", "sigma = " + FormatSig(sigma) +
                                       " must lie in [0,1) for the oracle");
  }
  Builder b("surplus_share");
  b.game().players = {"firm1", "firm2", "entrepreneur"};
  IndependentTypes(b, 2, lambda);
  const bool at = conventions::kAcquihireAtThreshold;

  // Firm 2 moves last; its deal splits its own surplus over pi_F + pi_E.
  auto s2 = [&](MatchType t) -> Rational { return p.pi_bar(t) - p.pi_F - p.pi_E; };
  auto price2 = [&](MatchType t) -> Rational { return p.pi_E + sigma * s2(t); };
  // Firm 1's disagreement point is the continuation in which firm 2
  // acquihires iff High.
  const Rational cont_firm = lambda * p.pi_under_H + (1 - lambda) * p.pi_F;
  const Rational cont_ent =
      (1 - lambda) * p.pi_E + lambda * price2(MatchType::kHigh);
  auto price1 = [&](MatchType t) -> Rational {
    const Rational surplus = p.pi_bar(t) - cont_firm - cont_ent;
    return cont_ent + sigma * surplus;
  };

  auto none = [&] {
    return b.Terminal(
        [&](const State&) { return NonePayoffs(p, 2, true); },
        [](const State&) { return std::string(kOutcomeNone); });
  };
  const int own2 = b.Terminal(
      [&](const State& s) {
        const int t = s.values[1];
        return OwnerPayoffs(p, 2, 1, t, price2(TypeOf(t)), true);
      },
      [](const State& s) { return OwnerLabel(1, s.values[1]); });
  const int own1 = b.Terminal(
      [&](const State& s) {
        const int t = s.values[0];
        return OwnerPayoffs(p, 2, 0, t, price1(TypeOf(t)), true);
      },
      [](const State& s) { return OwnerLabel(0, s.values[0]); });
  const int f2 =
      b.Decision(1, "f2", {1}, {"Acquihire", "Nothing"}, {own2, none()}, at);
  const int root =
      b.Decision(0, "f1", {0}, {"Acquihire", "Nothing"}, {own1, f2}, at);
  return b.Finish(root, {"f1"});
}

GameSpec BuildNFirmGame(int n, const ProfitProfile& p, const Rational& lambda) {
  if (n < 2 || n > 8) throw ValidationError("n", "oracle supports 2 <= n <= 8");
  RequireLambdaOpenUnit(lambda);
  Builder b("nfirm");
  for (int i = 1; i <= n; ++i) b.game().players.push_back("firm" + std::to_string(i));
  IndependentTypes(b, n, lambda);
  const bool at = conventions::kAcquihireAtThreshold;
  int next = b.Terminal([&](const State&) { return NonePayoffs(p, n, false); },
                        [](const State&) { return std::string(kOutcomeNone); });
  for (int k = n - 1; k >= 0; --k) {
    const int own = b.Terminal(
        [&, k](const State& s) {
          return OwnerPayoffs(p, n, k, s.values[k], p.pi_E, false);
        },
        [k](const State& s) { return OwnerLabel(k, s.values[k]); });
    next = b.Decision(k, "f" + std::to_string(k + 1), {k},
                      {"Acquihire", "Nothing"}, {own, next}, at);
  }
  return b.Finish(next, {"f1"});
}

GameSpec BuildLaborGame(const ProfitProfile& p, const ShockParams& sp,
                        const Rational& lambda) {
  RequireLambdaOpenUnit(lambda);
  ValidateShockParams(sp);
  Builder b("labor");
  b.game().players = {"firm1", "firm2"};
  b.AddDim("theta1", {"H", "L"});
  b.AddDim("theta2", {"H", "L"});
  const int down = b.AddDim("downturn", {"no", "yes"}, 1);
  const int sh1 = b.AddDim("shock1", {"D", "N"}, 1);
  const int sh2 = b.AddDim("shock2", {"D", "N"}, 1);
  const ShockDistribution dist = shock_distribution(sp.gamma, sp.r);
  for (int t1 = 0; t1 < 2; ++t1) {
    for (int t2 = 0; t2 < 2; ++t2) {
      const Rational pt = (t1 == kH ? lambda : 1 - lambda) *
                          (t2 == kH ? lambda : 1 - lambda);
      b.game().states.push_back({{t1, t2, 0, 1, 1}, pt * (1 - sp.delta)});
      for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
          const Shock x = a == 0 ? Shock::kDowngrade : Shock::kNone;
          const Shock y = c == 0 ? Shock::kDowngrade : Shock::kNone;
          // Shock pairs ruled out by perfect correlation are left out.
          if (dist.P(x, y) == 0) continue;
          b.game().states.push_back(
              {{t1, t2, 1, a, c}, pt * sp.delta * dist.P(x, y)});
        }
      }
    }
  }
  auto now = [&](const State& s, int firm) {
    const int shock = s.values[firm == 0 ? sh1 : sh2];
    return s.values[down] == 1 && shock == 0 ? kL : s.values[firm];
  };
  // Per-period payoffs; holder -1 means nobody employs her.
  auto period = [&](int holder, int type, std::vector<Rational>& acc) {
    for (int f = 0; f < 2; ++f) {
      if (holder < 0) {
        acc[f] += p.pi_F;
      } else if (f == holder) {
        acc[f] += p.pi_bar(TypeOf(type)) - p.pi_E;
      } else {
        acc[f] += p.pi_under(TypeOf(type));
      }
    }
  };
  auto terminal = [&](int h1, int h2, const std::string& label) {
    return b.Terminal(
        [&, h1, h2](const State& s) {
          std::vector<Rational> acc(2, Rational(0));
          period(h1, h1 < 0 ? 0 : s.values[h1], acc);
          period(h2, h2 < 0 ? 0 : now(s, h2), acc);
          return acc;
        },
        [label](const State&) { return label; });
  };
  const bool at = conventions::kAcquihireAtThreshold;
  const bool keep_at_tie = conventions::kKeepAtIndifference;
  auto keep_node = [&](int employer) {
    const int other = 1 - employer;
    const std::string e = std::to_string(employer + 1);
    const std::string o = std::to_string(other + 1);
    const int kept = terminal(employer, employer, "hire");
    const int rehired = terminal(employer, other, "hire+layoff");
    const int exited = terminal(employer, -1, "hire+layoff+exit");
    const int rehire = b.Decision(other, "f" + o + "_rehire",
                                  {other, down, other == 0 ? sh1 : sh2},
                                  {"Hire", "Pass"}, {rehired, exited}, at, 1);
    const std::vector<int> obs = {employer, down, employer == 0 ? sh1 : sh2};
    if (keep_at_tie) {
      return b.Decision(employer, "f" + e + "_keep", obs, {"Keep", "Layoff"},
                        {kept, rehire}, true, 1);
    }
    return b.Decision(employer, "f" + e + "_keep", obs, {"Layoff", "Keep"},
                      {rehire, kept}, true, 1);
  };
  const int fresh2 = b.Decision(1, "f2_p2", {1, down, sh2}, {"Acquihire", "Nothing"},
                                {terminal(-1, 1, "none"), terminal(-1, -1, "none")},
                                at, 1);
  const int fresh1 = b.Decision(0, "f1_p2", {0, down, sh1}, {"Acquihire", "Nothing"},
                                {terminal(-1, 0, "none"), fresh2}, at, 1);
  const int f2 = b.Decision(1, "f2", {1}, {"Acquihire", "Nothing"},
                            {keep_node(1), fresh1}, at, 0);
  const int root = b.Decision(0, "f1", {0}, {"Acquihire", "Nothing"},
                              {keep_node(0), f2}, at, 0);
  return b.Finish(root, {"f1"});
}

GameSpec build_game(const std::string& variant, const GameInputs& in) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) {
      throw std::invalid_argument("variant " + variant + " needs " + what);
    }
  };
  if (variant == "baseline") {
    need(in.profile.has_value(), "a profit profile");
    return BuildBaselineGame(*in.profile, in.lambda, in.with_entrepreneur,
                             in.single_firm);
  }
  if (variant == "tech") {
    need(in.gains.has_value(), "a gain profile");
    return BuildTechGame(*in.gains, in.lambda);
  }
  if (variant == "partial") {
    need(in.profile.has_value() && in.curves.has_value(),
         "a profit profile and ownership curves");
    return BuildPartialGame(*in.profile, *in.curves, in.lambda, in.shares);
  }
  if (variant == "uncertain_order") {
    need(in.profile.has_value(), "a profit profile");
    return BuildUncertainOrderGame(*in.profile, in.lambda);
  }
  if (variant == "surplus_share") {
    need(in.profile.has_value(), "a profit profile");
    return BuildSurplusShareGame(*in.profile, in.sigma, in.lambda);
  }
  if (variant == "nfirm") {
    need(in.profile.has_value(), "an n-firm profit profile");
    return BuildNFirmGame(in.n, *in.profile, in.lambda);
  }
  if (variant == "labor") {
    need(in.profile.has_value() && in.shocks.has_value(),
         "a profit profile and shock parameters");
    return BuildLaborGame(*in.profile, *in.shocks, in.lambda);
  }
  throw std::invalid_argument("unknown oracle variant: " + variant);
}

// ---------------------------------------------------------------------------
// Solving and checks

PBEResult solve_pbe(const GameSpec& g, const SolveOptions& opt) {
  Solver s(g, opt);
  PBEResult r = s.Run();
  r.variant = g.variant;
  return r;
}

Rational ActionValue(const GameSpec& g, const PBEResult& r,
                     const OracleEquilibrium& eq, int iset, int action) {
  const Lookup lk = LookupFor(g, r);
  const InfoSet& is = r.info_sets.at(iset);
  const std::vector<Rational>& w = eq.beliefs.at(iset).weights;
  Rational total = 0, v;
  for (size_t m = 0; m < is.members.size(); ++m) {
    if (w[m] == 0) continue;
    const auto& mem = is.members[m];
    ValueInto(g, lk, eq.strategy, g.nodes[mem.node].children[action], mem.state,
              is.mover, v);
    total += w[m] * v;
  }
  return total;
}

bool OneShotDeviationCheck(const GameSpec& g, const PBEResult& r,
                           const OracleEquilibrium& eq) {
  const Lookup lk = LookupFor(g, r);
  std::vector<std::vector<Rational>> reach(r.info_sets.size());
  for (size_t id = 0; id < r.info_sets.size(); ++id) {
    reach[id].assign(r.info_sets[id].members.size(), Rational(0));
  }
  for (size_t s = 0; s < g.states.size(); ++s) {
    Walk(
        g, lk, eq.strategy, g.root, static_cast<int>(s), g.states[s].prob,
        [&](int node, int state, const Rational& w) {
          const int id = lk.At(node, state);
          const auto& mem = r.info_sets[id].members;
          for (size_t m = 0; m < mem.size(); ++m) {
            if (mem[m].node == node && mem[m].state == state) reach[id][m] += w;
          }
        },
        [](int, int, const Rational&) {});
  }
  for (size_t id = 0; id < r.info_sets.size(); ++id) {
    const InfoSet& is = r.info_sets[id];
    const BeliefRecord& b = eq.beliefs.at(id);
    Rational total = 0;
    for (const Rational& x : reach[id]) total += x;
    if (total != 0) {
      for (size_t m = 0; m < reach[id].size(); ++m) {
        if (b.weights[m] != reach[id][m] / total) return false;
      }
    }
    const Rational chosen = ActionValue(g, r, eq, static_cast<int>(id),
                                        eq.strategy[id]);
    for (size_t a = 0; a < is.actions.size(); ++a) {
      if (static_cast<int>(a) == eq.strategy[id]) continue;
      const Rational dev = ActionValue(g, r, eq, static_cast<int>(id),
                                       static_cast<int>(a));
      if (dev > chosen) return false;
      if (is.tie_first && static_cast<int>(a) < eq.strategy[id] && dev == chosen) {
        return false;
      }
    }
  }
  return true;
}

std::vector<StrategyEntry> Firm1Strategy(const GameSpec& g, const PBEResult& r,
                                         int k) {
  std::vector<StrategyEntry> out;
  for (int t = 0; t < 2; ++t) {
    StrategyEntry e;
    e.firm = 1;
    e.type = TypeOf(t);
    const std::string& a = r.ActionAt(k, std::string("f1[theta1=") + TypeName(t) + "]");
    if (a == "Acquihire") {
      e.action = Action::kAcquihire;
      if (g.variant == "tech") {
        const std::string base = std::string("f1_resale[theta1=") + TypeName(t);
        const bool to_high = r.ActionAt(k, base + ",theta2=H]") == "Offer";
        const bool to_low = r.ActionAt(k, base + ",theta2=L]") == "Offer";
        if (to_high || to_low) {
          e.action = Action::kSellTech;
          e.sells_to_high_only = to_high && !to_low;
        }
      }
    } else if (a.rfind("Invest:", 0) == 0) {
      e.action = Action::kInvest;
      e.share = ParseRational(a.substr(7));
    } else {
      e.action = Action::kNothing;
    }
    out.push_back(e);
  }
  return out;
}

void AgreementReport::Add(const std::string& field, const std::string& closed,
                          const std::string& oracle) {
  agree = false;
  diffs.push_back(field + ": closed=" + closed + " oracle=" + oracle);
}

void AgreementReport::Merge(const AgreementReport& o, const std::string& prefix) {
  if (!o.agree) agree = false;
  for (const std::string& d : o.diffs) diffs.push_back(prefix + d);
}

AgreementReport certify(const EquilibriumReport& closed, const GameSpec& g,
                        const PBEResult& oracle) {
  AgreementReport rep;
  const int k = oracle.FirstPassive();
  if (k < 0) {
    rep.Add("equilibria", "exists", "no passive equilibrium");
    return rep;
  }
  if (!oracle.unique_passive_firm1_behavior) {
    rep.Add("firm1_behavior", "unique", "not unique");
  }
  const std::vector<StrategyEntry> mine = Firm1Strategy(g, oracle, k);
  for (const StrategyEntry& o : mine) {
    const StrategyEntry& c = closed.Entry(1, o.type);
    if (c.action != o.action || c.sells_to_high_only != o.sells_to_high_only ||
        c.share != o.share) {
      rep.Add("firm1." + ToString(o.type), c.Describe(), o.Describe());
    }
  }
  std::set<std::string> keys;
  for (const auto& [k, v] : closed.outcome_distribution) keys.insert(k);
  const auto& od = oracle.equilibria[k].outcome_distribution;
  for (const auto& [k, v] : od) keys.insert(k);
  for (const std::string& k : keys) {
    const auto ci = closed.outcome_distribution.find(k);
    const auto oi = od.find(k);
    const Rational cv = ci == closed.outcome_distribution.end() ? Rational(0) : ci->second;
    const Rational ov = oi == od.end() ? Rational(0) : oi->second;
    if (cv != ov) rep.Add("outcome." + k, FormatSig(cv), FormatSig(ov));
  }
  return rep;
}

AgreementReport certify_threshold(
    const Threshold& threshold, const std::vector<Rational>& grid,
    const std::function<bool(const Rational&)>& oracle_acts) {
  AgreementReport rep;
  for (const Rational& l : grid) {
    const bool closed = threshold.Admits(l);
    const bool oracle = oracle_acts(l);
    if (closed != oracle) {
      rep.Add("lambda=" + FormatSig(l), closed ? "act" : "pass",
              oracle ? "act" : "pass");
    }
  }
  return rep;
}

LaborOutcome LaborRates(const OracleEquilibrium& eq) {
  LaborOutcome out;
  for (const auto& [label, prob] : eq.outcome_distribution) {
    if (label.rfind("hire", 0) == 0) out.hire_rate += prob;
    if (label.find("layoff") != std::string::npos) out.layoff_rate += prob;
    if (label.find("exit") != std::string::npos) out.exit_rate += prob;
  }
  return out;
}

LaborCertification certify_labor(const ProfitProfile& p, const ShockParams& s,
                                 const Rational& lambda) {
  const ExactLabor exact = enumerate_labor(p, s, lambda);
  const GameSpec g = BuildLaborGame(p, s, lambda);
  auto name = [](bool acquire) { return acquire ? "Acquihire" : "Nothing"; };
  SolveOptions opt;
  for (int t = 0; t < 2; ++t) {
    const std::string tn = TypeName(t);
    opt.fixed_actions["f1[theta1=" + tn + "]"] = name(exact.strategies.firm1[t]);
    opt.fixed_actions["f2[theta2=" + tn + "]"] = name(exact.strategies.firm2[t]);
  }
  const PBEResult r = solve_pbe(g, opt);
  LaborCertification out;
  out.equilibria = r.equilibria_found;
  out.passive = r.FirstPassive() >= 0;
  if (r.equilibria.empty()) {
    out.agreement.Add("period1_strategies", "PBE", "no supporting oracle equilibrium");
    return out;
  }
  const int k = std::max(r.FirstPassive(), 0);
  out.oracle_rates = LaborRates(r.equilibria[k]);
  const LaborOutcome& e = exact.rates;
  if (e.hire_rate != out.oracle_rates.hire_rate) {
    out.agreement.Add("hire_rate", FormatSig(e.hire_rate),
                      FormatSig(out.oracle_rates.hire_rate));
  }
  if (e.layoff_rate != out.oracle_rates.layoff_rate) {
    out.agreement.Add("layoff_rate", FormatSig(e.layoff_rate),
                      FormatSig(out.oracle_rates.layoff_rate));
  }
  if (e.exit_rate != out.oracle_rates.exit_rate) {
    out.agreement.Add("exit_rate", FormatSig(e.exit_rate),
                      FormatSig(out.oracle_rates.exit_rate));
  }
  return out;
}

AgreementReport certify_partial(const PartialResult& closed, const GameSpec& g,
                                const PBEResult& oracle) {
  AgreementReport rep;
  if (oracle.equilibria.empty()) {
    rep.Add("equilibria", "exists", "none");
    return rep;
  }
  const int low = oracle.InfoSetIndex("f1[theta1=L]");
  const InfoSet& is = oracle.info_sets.at(low);
  const OracleEquilibrium& eq = oracle.equilibria[0];
  std::vector<Rational> values;
  for (size_t a = 0; a < is.actions.size(); ++a) {
    values.push_back(ActionValue(g, oracle, eq, low, static_cast<int>(a)));
  }
  const Rational best = *std::max_element(values.begin(), values.end());
  const StrategyEntry& c = closed.report.Entry(1, MatchType::kLow);
  const std::string want = ActionName(c);
  const auto it = std::find(is.actions.begin(), is.actions.end(), want);
  if (it == is.actions.end()) {
    rep.Add("firm1.L.action", want, "not in the oracle's action set");
    return rep;
  }
  const Rational& got = values[it - is.actions.begin()];
  if (got != best) rep.Add("firm1.L.value", FormatSig(got), FormatSig(best));
  if (values[0] != closed.acquihire_value) {
    rep.Add("acquihire_value", FormatSig(closed.acquihire_value), FormatSig(values[0]));
  }
  if (values[1] != closed.nothing_value) {
    rep.Add("nothing_value", FormatSig(closed.nothing_value), FormatSig(values[1]));
  }
  if (closed.best_invest) {
    const std::string inv = "Invest:" + closed.best_invest->share.get_str();
    const auto jt = std::find(is.actions.begin(), is.actions.end(), inv);
    if (jt != is.actions.end() &&
        values[jt - is.actions.begin()] != closed.best_invest->value) {
      rep.Add("invest_value", FormatSig(closed.best_invest->value),
              FormatSig(values[jt - is.actions.begin()]));
    }
  }
  bool listed = false;
  for (size_t k = 0; k < oracle.equilibria.size() && !listed; ++k) {
    listed = oracle.ActionAt(static_cast<int>(k), is.name) == want;
  }
  if (!listed) rep.Add("firm1.L.equilibrium", want, "not an equilibrium choice");
  return rep;
}

}  // namespace acquihire
