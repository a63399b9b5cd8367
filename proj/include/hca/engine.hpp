#pragma once

// Synchronous evolution of an automaton B on a Region, initial
// configurations, the yellow-line trace and the comparison with the 1D run.

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hca/ca1d.hpp"
#include "hca/embed.hpp"
#include "hca/region.hpp"

namespace hca {

struct Configuration {
  std::vector<State> states;  // indexed by CellId
  int time = 0;
  /// Cells at depth <= valid_radius hold the states of the infinite run.
  int valid_radius = 0;
  /// Set while the configuration provably agrees with the infinite run on
  /// the whole region (see certify_background).
  bool certified = false;
  /// The background configuration used for certification, if any.
  std::vector<State> background;

  State at(CellId c) const { return states[idx(c)]; }
  bool operator==(const Configuration&) const = default;
};

/// State of the padding cells of the guideline and of the trace outside
/// the word: the image of 0, or the quiescent state of the fixability witness.
inline State padding_state(const HcaAutomaton& b) {
  if (b.theorem() == Theorem::T3) return b.white();
  return 0;
}

/// Guideline index of the first letter of a word of length `len`.
inline long word_origin(std::size_t len) { return -static_cast<long>(len > 0 ? (len - 1) / 2 : 0); }

inline RuleContext context_of(const Region& r, const std::vector<State>& states, CellId c) {
  RuleContext ctx;
  ctx.self = states[idx(c)];
  ctx.neighbors.resize(r.sides());
  for (int s = 0; s < r.sides(); ++s) {
    const CellId n = r.neighbor_slot(c, s);
    if (is_boundary(n)) throw PreconditionError("context_of: cell has a boundary neighbour");
    ctx.neighbors[s] = states[idx(n)];
  }
  return ctx;
}

/// The word on the guideline segment, padding elsewhere on the line, and
/// blue (T1) or W with B markers (T3/T4) off the line.
inline Configuration init_configuration(const Region& region, const HcaAutomaton& b, std::span<const State> word) {
  if (b.grid() != region.grid()) throw PreconditionError("init_configuration: automaton and region grids differ");
  const long origin = word_origin(word.size());
  if (origin < -region.halfwidth() || origin + static_cast<long>(word.size()) - 1 > region.halfwidth())
    throw PreconditionError("init_configuration: word does not fit the guideline segment");
  for (State s : word)
    if (s >= b.a_states()) throw PreconditionError("init_configuration: word letter is not a state of A");
  Configuration cfg;
  cfg.valid_radius = region.radius();
  const State off = b.blue() ? *b.blue() : b.white();
  cfg.states.assign(region.size(), off);
  if (b.theorem() != Theorem::T1)
    for (CellId m : marker_cells(region, b.theorem()).cells) cfg.states[idx(m)] = b.red();
  const State pad = padding_state(b);
  for (const auto& e : region.guideline()) {
    const long i = e.index - origin;
    cfg.states[idx(e.cell)] = i >= 0 && i < static_cast<long>(word.size()) ? word[static_cast<std::size_t>(i)] : pad;
  }
  return cfg;
}

/// Guard cells: the frozen cells and their neighbours.
inline std::vector<CellId> guard_cells(const Region& region) {
  std::set<CellId> out;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const CellId c = cell_id(i);
    if (!region.frozen(c)) continue;
    out.insert(c);
    for (int s = 0; s < region.sides(); ++s)
      if (!is_boundary(region.neighbor_slot(c, s))) out.insert(region.neighbor_slot(c, s));
  }
  return {out.begin(), out.end()};
}

/// Tries to certify a configuration against its background: the background
/// (empty word) must be a fixed point of B. Then, as long as the guard cells
/// still hold the background, no change has reached the frozen boundary and
/// every region state equals the infinite run. Needs radius >= 3 so that every
/// kind of background neighbourhood occurs at an updated cell.
inline bool certify_background(const Region& region, const HcaAutomaton& b, Configuration& cfg) {
  cfg.certified = false;
  cfg.background.clear();
  if (region.radius() < 3) return false;
  const Configuration g = init_configuration(region, b, {});
  for (std::size_t i = 0; i < region.size(); ++i) {
    const CellId c = cell_id(i);
    if (region.frozen(c)) continue;
    if (b.next_state(context_of(region, g.states, c)) != g.at(c)) return false;
  }
  cfg.background = g.states;
  for (CellId c : guard_cells(region))
    if (cfg.at(c) != g.at(c)) return false;
  cfg.certified = true;
  return true;
}

/// Per-step observations gathered by step_hca.
struct StepStats {
  std::size_t multiple_matches = 0;  // cells where two or more alignments matched
  std::size_t conflicts = 0;         // cells whose matches disagree on the new state
};

/// One synchronous step. Frozen cells keep their state.
inline Configuration step_hca(const HcaAutomaton& b, const Region& region, const Configuration& cfg,
                              StepStats* stats = nullptr) {
  if (!cfg.certified && cfg.valid_radius < 1)
    throw ValidityExhaustedError("step_hca: validity window exhausted at t=" + std::to_string(cfg.time));
  Configuration next = cfg;
  next.time = cfg.time + 1;
  next.valid_radius = cfg.valid_radius - 1;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const CellId c = cell_id(i);
    if (region.frozen(c)) continue;
    const RuleContext ctx = context_of(region, cfg.states, c);
    const Evaluation e = b.evaluate(ctx);
    if (stats) {
      stats->multiple_matches += e.matches >= 2;
      stats->conflicts += e.conflict();
    }
    if (e.matches > 0 && !e.conflict()) next.states[i] = *e.outputs.begin();
  }
  if (next.certified) {
    for (CellId c : guard_cells(region))
      if (next.at(c) != next.background[idx(c)]) {
        next.certified = false;
        break;
      }
  }
  return next;
}

/// Is the state of cell c exact for the infinite run?
inline bool is_valid(const Region& region, const Configuration& cfg, CellId c) {
  return cfg.certified || region.depth(c) <= cfg.valid_radius;
}

/// One row of a yellow-line trace.
struct TraceRow {
  int time = 0;
  long offset = 0;  // guideline index of states[0]
  std::vector<State> states;
  bool operator==(const TraceRow&) const = default;
};

inline TraceRow yellow_row(const Region& region, const Configuration& cfg) {
  TraceRow row{cfg.time, 0, {}};
  bool first = true;
  for (const auto& e : region.guideline()) {
    if (!is_valid(region, cfg, e.cell)) continue;
    if (first) row.offset = e.index;
    first = false;
    row.states.push_back(cfg.at(e.cell));
  }
  return row;
}

inline std::vector<TraceRow> yellow_trace(std::span<const Configuration> cfgs, const Region& region) {
  std::vector<TraceRow> out;
  for (const auto& c : cfgs) out.push_back(yellow_row(region, c));
  return out;
}

struct Divergence {
  int time = 0;
  long position = 0;
  State expected = 0;
  State got = 0;
};

/// An off-line cell that changed although the construction keeps it fixed.
struct StabilityViolation {
  int time = 0;
  CellId cell = kBoundary;
  State before = 0;
  State after = 0;
};

struct EquivalenceReport {
  int steps = 0;
  std::optional<Divergence> divergence;
  std::vector<StabilityViolation> stability;
  std::size_t multiple_matches = 0;
  std::size_t conflicts = 0;
  std::size_t compared = 0;  // (time, position) pairs checked against the oracle
  bool ok() const { return !divergence && stability.empty(); }
};

/// Runs B from the word for `steps` steps and compares the yellow line with
/// the 1D run inside the valid window. Off-line cells are checked as well:
/// blue stays blue (T1), nothing off the line changes (T3/T4).
inline EquivalenceReport equivalence_check(const Rule1D& a, const HcaAutomaton& b, const Region& region,
                                           std::span<const State> word, int steps,
                                           std::vector<Configuration>* history = nullptr) {
  EquivalenceReport rep;
  rep.steps = steps;
  Configuration cfg = init_configuration(region, b, word);
  certify_background(region, b, cfg);
  if (!cfg.certified && steps > region.radius())
    throw PreconditionError("equivalence_check: steps exceed the validity of the region");
  Tape tape{std::vector<State>(word.begin(), word.end()), word_origin(word.size()), padding_state(b)};
  if (tape.window.empty()) tape.window.push_back(tape.padding);
  const auto compare = [&](const Configuration& c) {
    for (const auto& e : region.guideline()) {
      if (!is_valid(region, c, e.cell)) continue;
      ++rep.compared;
      const State want = tape.at(e.index), got = c.at(e.cell);
      if (want != got && !rep.divergence) rep.divergence = Divergence{c.time, e.index, want, got};
    }
  };
  if (history) history->push_back(cfg);
  compare(cfg);
  for (int t = 0; t < steps; ++t) {
    StepStats st;
    Configuration next = step_hca(b, region, cfg, &st);
    rep.multiple_matches += st.multiple_matches;
    rep.conflicts += st.conflicts;
    for (std::size_t i = 0; i < region.size(); ++i) {
      const CellId c = cell_id(i);
      if (region.on_guideline(c) || !is_valid(region, next, c)) continue;
      const bool watched = b.theorem() == Theorem::T1 ? cfg.states[i] == *b.blue() : true;
      if (watched && next.states[i] != cfg.states[i])
        rep.stability.push_back({next.time, c, cfg.states[i], next.states[i]});
    }
    tape = step_1d(a, tape);
    cfg = std::move(next);
    if (history) history->push_back(cfg);
    compare(cfg);
  }
  return rep;
}

struct ApplicabilityViolation {
  int time = 0;
  CellId cell = kBoundary;
  int matches = 0;
  bool off_line_change = false;
};

struct ApplicabilityReport {
  int horizon = 0;
  std::size_t cells_scanned = 0;
  std::vector<ApplicabilityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// For every valid, updated cell at every time up to `horizon`: at most one
/// matching alignment, and no match off the guideline that would change the
/// cell's state.
inline ApplicabilityReport verify_unique_applicability(const HcaAutomaton& b, const Region& region,
                                                       const Configuration& init, int horizon) {
  ApplicabilityReport rep;
  rep.horizon = horizon;
  Configuration cfg = init;
  for (int t = 0;; ++t) {
    for (std::size_t i = 0; i < region.size(); ++i) {
      const CellId c = cell_id(i);
      if (region.frozen(c) || !is_valid(region, cfg, c)) continue;
      ++rep.cells_scanned;
      const RuleContext ctx = context_of(region, cfg.states, c);
      const Evaluation e = b.evaluate(ctx);
      const bool change = e.matches > 0 && !region.on_guideline(c) &&
                          std::any_of(e.outputs.begin(), e.outputs.end(), [&](State s) { return s != ctx.self; });
      if (e.matches >= 2 || change) rep.violations.push_back({cfg.time, c, e.matches, change});
    }
    if (t == horizon) break;
    cfg = step_hca(b, region, cfg);
  }
  return rep;
}

/// Contexts met by the updated cells of a run, for the invariance checker.
inline std::set<RuleContext> reachable_contexts(const HcaAutomaton& b, const Region& region,
                                                std::span<const Configuration> run) {
  std::set<RuleContext> out;
  for (const auto& cfg : run)
    for (std::size_t i = 0; i < region.size(); ++i) {
      const CellId c = cell_id(i);
      if (region.frozen(c) || !is_valid(region, cfg, c)) continue;
      out.insert(context_of(region, cfg.states, c));
    }
  (void)b;
  return out;
}

// Symbolic configuration rows around the central cell at t = 0.

/// Symbol of a cell: guideline indices -2..2 are U X Y Z T, markers B,
/// everything else W.
inline std::string symbol_of(const Region& region, const Configuration& cfg, const HcaAutomaton& b, CellId c) {
  if (const auto* e = region.guideline_entry(c)) {
    static const char* names[] = {"U", "X", "Y", "Z", "T"};
    if (e->index >= -2 && e->index <= 2) return names[e->index + 2];
    return "L" + std::to_string(e->index);
  }
  if (b.theorem() != Theorem::T1 && cfg.at(c) == b.red()) return "B";
  if (b.blue() && cfg.at(c) == *b.blue()) return "b";
  return "W";
}

struct SymbolicRow {
  std::string label;  // 0, 1_s (side s), 2_s (vertex between sides s and s+1)
  std::string self;
  std::vector<std::string> neighbors;

  std::string text() const {
    std::string s = label + ": " + self + "|";
    for (std::size_t i = 0; i < neighbors.size(); ++i) s += (i ? " " : "") + neighbors[i];
    return s;
  }
};

/// Rows for the central cell, its side neighbours and (pentagrid) its
/// vertex neighbours, neighbours listed in side order.
inline std::vector<SymbolicRow> central_rows(const Region& region, const HcaAutomaton& b, const Configuration& cfg) {
  const auto row = [&](std::string label, CellId c) {
    SymbolicRow r{std::move(label), symbol_of(region, cfg, b, c), {}};
    for (int s = 0; s < region.sides(); ++s) {
      const CellId n = region.neighbor_slot(c, s);
      r.neighbors.push_back(is_boundary(n) ? "?" : symbol_of(region, cfg, b, n));
    }
    return r;
  };
  const CellId centre = cell_id(0);
  std::vector<SymbolicRow> out{row("0", centre)};
  for (int s = 0; s < region.sides(); ++s)
    out.push_back(row("1_" + std::to_string(side_of_slot(region.grid(), s)), region.neighbor_slot(centre, s)));
  if (region.grid() == GridKind::Pentagrid) {
    const auto vn = vertex_neighbors(region, centre);
    for (std::size_t i = 0; i < vn.size(); ++i) out.push_back(row("2_" + std::to_string(i + 1), vn[i]));
  }
  return out;
}

/// Rotation-free key of a row: self plus the least cyclic shift of the
/// neighbour list.
inline std::string cyclic_key(const std::string& self, std::vector<std::string> nb) {
  std::vector<std::string> best = nb;
  for (std::size_t k = 1; k < nb.size(); ++k) {
    std::rotate(nb.begin(), nb.begin() + 1, nb.end());
    if (nb < best) best = nb;
  }
  std::string s = self + "|";
  for (std::size_t i = 0; i < best.size(); ++i) s += (i ? " " : "") + best[i];
  return s;
}

inline nlohmann::json to_json(const TraceRow& r) {
  return {{"time", r.time}, {"offset", r.offset}, {"states", r.states}};
}

inline nlohmann::json to_json(const Configuration& cfg) {
  return {{"time", cfg.time}, {"valid_radius", cfg.valid_radius}, {"certified", cfg.certified}, {"states", cfg.states}};
}

inline Configuration configuration_from_json(const nlohmann::json& j) {
  Configuration c;
  c.time = j.at("time").get<int>();
  c.valid_radius = j.at("valid_radius").get<int>();
  c.states = j.at("states").get<std::vector<State>>();
  return c;
}

}  // namespace hca
