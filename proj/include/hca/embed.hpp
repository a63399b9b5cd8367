#pragma once

// The transformations A -> B. An automaton B is kept intensionally: one
// admissible context pattern (fixed states plus a left and a right free
// position), an action given by the 1D rule, and the default "unchanged".

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hca/ca1d.hpp"
#include "hca/grid.hpp"
#include "hca/symmetry.hpp"

namespace hca {

enum class PositionKind { Fixed, Left, Right };

struct PatternPosition {
  PositionKind kind = PositionKind::Fixed;
  State state = 0;  // meaningful for Fixed only
  bool operator==(const PatternPosition&) const = default;
};

/// Positions in the canonical frame of a guideline cell.
struct Pattern {
  std::vector<PatternPosition> positions;
  bool self_must_be_a_state = false;
  bool operator==(const Pattern&) const = default;

  int left() const { return find(PositionKind::Left); }
  int right() const { return find(PositionKind::Right); }

 private:
  int find(PositionKind k) const {
    for (std::size_t i = 0; i < positions.size(); ++i)
      if (positions[i].kind == k) return static_cast<int>(i);
    return -1;
  }
};

/// Outcome of applying B to one context.
struct Evaluation {
  int matches = 0;             // distinct rotated forms matching the pattern
  std::set<State> outputs;     // new states proposed by the matches
  bool conflict() const { return outputs.size() > 1; }
};

class HcaAutomaton {
 public:
  HcaAutomaton() = default;
  HcaAutomaton(GridKind grid, Theorem theorem, int n_states, Rule1D source, Pattern pattern)
      : grid_(grid), theorem_(theorem), n_states_(n_states), source_(source), action_(std::move(source)),
        pattern_(std::move(pattern)) {
    if (static_cast<int>(pattern_.positions.size()) != arity(grid_))
      throw PreconditionError("HcaAutomaton: pattern arity does not match the grid");
    if (pattern_.left() < 0 || pattern_.right() < 0) throw PreconditionError("HcaAutomaton: pattern needs left and right");
    for (const auto& p : pattern_.positions)
      if (p.kind == PositionKind::Fixed && p.state >= n_states_)
        throw PreconditionError("HcaAutomaton: fixed state out of range");
    if (action_.states() > n_states_) throw PreconditionError("HcaAutomaton: action has more states than B");
    for (const auto& p : pattern_.positions)
      if (p.kind == PositionKind::Fixed) ++fixed_count_[p.state];
  }

  GridKind grid() const { return grid_; }
  Theorem theorem() const { return theorem_; }
  int n_states() const { return n_states_; }
  /// States of A; they are encoded as the first a_states() states of B.
  int a_states() const { return action_.states(); }
  const Rule1D& source() const { return source_; }
  const Rule1D& action() const { return action_; }
  Rule1D& mutable_action() { return action_; }
  const Pattern& pattern() const { return pattern_; }

  /// B-state of each A-state.
  std::vector<State> state_map() const {
    std::vector<State> m(a_states());
    for (int i = 0; i < a_states(); ++i) m[i] = static_cast<State>(i);
    return m;
  }

  /// The extra state of the n+1 construction.
  std::optional<State> blue() const {
    if (theorem_ != Theorem::T1) return std::nullopt;
    return static_cast<State>(a_states());
  }

  std::string state_name(State s) const {
    if (blue() && s == *blue()) return "b";
    if (theorem_ != Theorem::T1 && s == white_) return "W";
    if (theorem_ != Theorem::T1 && s == red_) return "B";
    return std::to_string(s);
  }

  void set_markers(State white, State red) {
    white_ = white;
    red_ = red;
  }
  State white() const { return white_; }
  State red() const { return red_; }

  /// Does the rotated neighbour list `rot` (canonical order) match the pattern?
  bool matches_aligned(State self, const std::vector<State>& rot) const {
    if (pattern_.self_must_be_a_state && self >= a_states()) return false;
    for (std::size_t i = 0; i < rot.size(); ++i) {
      const auto& p = pattern_.positions[i];
      if (p.kind == PositionKind::Fixed) {
        if (rot[i] != p.state) return false;
      } else if (rot[i] >= a_states()) {
        return false;
      }
    }
    return true;
  }

  State apply_aligned(State self, const std::vector<State>& rot) const {
    return action_(rot[pattern_.left()], self, rot[pattern_.right()]);
  }

  /// Every matching alignment over the rotation group, identical rotated
  /// forms counted once.
  std::vector<std::vector<State>> matching_alignments(const RuleContext& ctx) const {
    check_arity(ctx, grid_);
    std::vector<std::vector<State>> out;
    if (!prefilter(ctx)) return out;
    std::vector<State> rot(ctx.neighbors.size());
    for (const auto& m : rotation_group(grid_)) {
      for (std::size_t i = 0; i < m.size(); ++i) rot[i] = ctx.neighbors[m[i]];
      if (matches_aligned(ctx.self, rot) && std::find(out.begin(), out.end(), rot) == out.end()) out.push_back(rot);
    }
    return out;
  }

  Evaluation evaluate(const RuleContext& ctx) const {
    Evaluation e;
    for (const auto& rot : matching_alignments(ctx)) {
      ++e.matches;
      e.outputs.insert(apply_aligned(ctx.self, rot));
    }
    return e;
  }

  /// New state; a conflicting context keeps its state.
  State next_state(const RuleContext& ctx) const {
    const Evaluation e = evaluate(ctx);
    if (e.matches == 0 || e.conflict()) return ctx.self;
    return *e.outputs.begin();
  }

 private:
  bool prefilter(const RuleContext& ctx) const {
    std::array<int, 256> have{};
    int a_count = 0;
    for (State s : ctx.neighbors) {
      ++have[s];
      a_count += s < a_states();
    }
    int need_a = 2;
    for (const auto& [s, c] : fixed_count_) {
      if (have[s] < c) return false;
      need_a += s < a_states() ? c : 0;
    }
    return a_count >= need_a;
  }

  GridKind grid_{};
  Theorem theorem_{};
  int n_states_ = 0;
  Rule1D source_;
  Rule1D action_;
  Pattern pattern_;
  State white_ = 0;
  State red_ = 1;
  std::map<State, int> fixed_count_;
};

namespace detail {

inline Pattern filled_pattern(int k, int left, int right, State fill) {
  Pattern p;
  p.positions.assign(k, PatternPosition{PositionKind::Fixed, fill});
  p.positions[left] = {PositionKind::Left, 0};
  p.positions[right] = {PositionKind::Right, 0};
  return p;
}

}  // namespace detail

/// n+1 states on any of the three grids; the extra (blue) state is n.
inline HcaAutomaton embed_theorem1(const Rule1D& a, GridKind grid) {
  const int n = a.states();
  if (n + 1 > 255) throw PreconditionError("embed_theorem1: too many states");
  const State blue = static_cast<State>(n);
  Pattern p;
  switch (grid) {
    case GridKind::Pentagrid: p = detail::filled_pattern(5, 0, 3, blue); break;
    case GridKind::Heptagrid: p = detail::filled_pattern(7, 0, 4, blue); break;
    case GridKind::Dodecagrid: p = detail::filled_pattern(12, 1, 4, blue); break;
  }
  p.self_must_be_a_state = true;
  return HcaAutomaton(grid, Theorem::T1, n + 1, a, std::move(p));
}

/// n states on the pentagrid for a fixable A. W is the quiescent state q of
/// the witness, B the state u fixed in context (q, q).
inline HcaAutomaton embed_theorem3(const Rule1D& a) {
  const auto w = is_fixable(a);
  if (!w) throw NotFixableError("embed_theorem3: the rule is not fixable");
  const State W = w->quiescent, B = w->fixed;
  Pattern p;
  p.positions = {{PositionKind::Fixed, B}, {PositionKind::Fixed, W}, {PositionKind::Right, 0},
                 {PositionKind::Fixed, W}, {PositionKind::Left, 0}};
  HcaAutomaton b(GridKind::Pentagrid, Theorem::T3, a.states(), a, std::move(p));
  b.set_markers(W, B);
  return b;
}

/// n states on the heptagrid or the dodecagrid; W = 0 and B = 1.
inline HcaAutomaton embed_theorem4(const Rule1D& a, GridKind grid) {
  if (a.states() < 2) throw PreconditionError("embed_theorem4: A needs at least two states");
  if (grid == GridKind::Pentagrid) throw PreconditionError("embed_theorem4: heptagrid or dodecagrid only");
  constexpr State W = 0, B = 1;
  Pattern p;
  if (grid == GridKind::Heptagrid) {
    p.positions = {{PositionKind::Left, 0},  {PositionKind::Fixed, B}, {PositionKind::Fixed, W},
                   {PositionKind::Fixed, B}, {PositionKind::Right, 0}, {PositionKind::Fixed, W},
                   {PositionKind::Fixed, W}};
  } else {
    p.positions.assign(12, PatternPosition{PositionKind::Fixed, W});
    for (int f : {0, 3, 9, 10}) p.positions[f] = {PositionKind::Fixed, B};
    p.positions[1] = {PositionKind::Left, 0};
    p.positions[4] = {PositionKind::Right, 0};
  }
  HcaAutomaton b(grid, Theorem::T4, a.states(), a, std::move(p));
  b.set_markers(W, B);
  return b;
}

inline HcaAutomaton embed(const Rule1D& a, Theorem t, GridKind grid) {
  switch (t) {
    case Theorem::T1: return embed_theorem1(a, grid);
    case Theorem::T3:
      if (grid != GridKind::Pentagrid) throw PreconditionError("T3 applies to the pentagrid only");
      return embed_theorem3(a);
    case Theorem::T4: return embed_theorem4(a, grid);
  }
  throw PreconditionError("unknown theorem");
}

/// The rule schema instantiated in the canonical frame: one rule per
/// (left, self, right) over A-states.
inline std::vector<Rule> schema_rules(const HcaAutomaton& b) {
  std::vector<Rule> out;
  const int n = b.a_states();
  const auto& pat = b.pattern();
  for (int l = 0; l < n; ++l)
    for (int s = 0; s < n; ++s)
      for (int r = 0; r < n; ++r) {
        Rule rule;
        rule.context.self = static_cast<State>(s);
        for (const auto& p : pat.positions) rule.context.neighbors.push_back(p.state);
        rule.context.neighbors[pat.left()] = static_cast<State>(l);
        rule.context.neighbors[pat.right()] = static_cast<State>(r);
        rule.next = b.action()(static_cast<State>(l), static_cast<State>(s), static_cast<State>(r));
        out.push_back(std::move(rule));
      }
  return out;
}

/// Explicit rules for observed contexts: a context with no matching
/// alignment keeps its state; otherwise one rule per matching alignment.
inline std::vector<Rule> context_rules(const HcaAutomaton& b, const std::set<RuleContext>& contexts) {
  std::vector<Rule> out;
  for (const auto& ctx : contexts) {
    const auto aligned = b.matching_alignments(ctx);
    if (aligned.empty()) out.push_back({ctx, ctx.self});
    for (const auto& rot : aligned) out.push_back({ctx, b.apply_aligned(ctx.self, rot)});
  }
  return out;
}

inline nlohmann::json to_json(const HcaAutomaton& b) {
  nlohmann::json pattern = nlohmann::json::array();
  for (const auto& p : b.pattern().positions) {
    switch (p.kind) {
      case PositionKind::Fixed: pattern.push_back(p.state); break;
      case PositionKind::Left: pattern.push_back("L"); break;
      case PositionKind::Right: pattern.push_back("R"); break;
    }
  }
  std::vector<std::string> names;
  for (int s = 0; s < b.n_states(); ++s) names.push_back(b.state_name(static_cast<State>(s)));
  nlohmann::json j{{"grid", to_string(b.grid())},
                   {"theorem", to_string(b.theorem())},
                   {"n_states", b.n_states()},
                   {"state_names", names},
                   {"state_map", b.state_map()},
                   {"patterns", nlohmann::json::array({{{"positions", pattern},
                                                        {"self_a_state", b.pattern().self_must_be_a_state}}})},
                   {"action", to_json(b.action())},
                   {"source", to_json(b.source())}};
  if (b.blue()) j["blue"] = *b.blue();
  if (b.theorem() != Theorem::T1) {
    j["white"] = b.white();
    j["red"] = b.red();
  }
  return j;
}

inline HcaAutomaton automaton_from_json(const nlohmann::json& j) {
  const GridKind grid = parse_grid(j.at("grid").get<std::string>());
  const Theorem t = parse_theorem(j.at("theorem").get<std::string>());
  const auto& pj = j.at("patterns").at(0);
  Pattern p;
  for (const auto& e : pj.at("positions")) {
    if (e.is_string()) {
      const auto s = e.get<std::string>();
      if (s != "L" && s != "R") throw PreconditionError("automaton file: pattern entry must be a state, L or R");
      p.positions.push_back({s == "L" ? PositionKind::Left : PositionKind::Right, 0});
    } else {
      p.positions.push_back({PositionKind::Fixed, e.get<State>()});
    }
  }
  p.self_must_be_a_state = pj.value("self_a_state", false);
  const Rule1D source = rule1d_from_json(j.contains("source") ? j.at("source") : j.at("action"));
  HcaAutomaton b(grid, t, j.at("n_states").get<int>(), source, std::move(p));
  b.mutable_action() = rule1d_from_json(j.at("action"));
  if (b.action().states() != source.states()) throw PreconditionError("automaton file: action and source differ in states");
  if (t != Theorem::T1) b.set_markers(j.at("white").get<State>(), j.at("red").get<State>());
  return b;
}

}  // namespace hca
