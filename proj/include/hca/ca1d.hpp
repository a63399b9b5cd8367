#pragma once

// One-dimensional radius-1 cellular automata: the source automata of the
// embeddings and the reference simulator used as the verification oracle.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hca/grid.hpp"

namespace hca {

/// n-state radius-1 rule, total over the n^3 triples (left, self, right).
class Rule1D {
 public:
  Rule1D() = default;

  Rule1D(int n, std::vector<State> table) : n_(n), table_(std::move(table)) {
    if (n_ < 1 || n_ > 255) throw PreconditionError("Rule1D: state count out of range");
    if (table_.size() != static_cast<std::size_t>(n_) * n_ * n_)
      throw PreconditionError("Rule1D: table must have n^3 entries");
    for (State s : table_)
      if (s >= n_) throw PreconditionError("Rule1D: output state out of range");
  }

  int states() const { return n_; }

  State operator()(State left, State self, State right) const { return table_[index(left, self, right)]; }

  State& at(State left, State self, State right) { return table_.at(index(left, self, right)); }

  const std::vector<State>& table() const { return table_; }

  bool operator==(const Rule1D&) const = default;

 private:
  std::size_t index(State l, State s, State r) const {
    return (static_cast<std::size_t>(l) * n_ + s) * n_ + r;
  }

  int n_ = 0;
  std::vector<State> table_;
};

/// Wolfram numbering: triple (a,b,c) maps to bit 4a+2b+c of `rule_number`.
inline Rule1D elementary(int rule_number) {
  if (rule_number < 0 || rule_number > 255) throw PreconditionError("elementary rule number must be in 0..255");
  std::vector<State> t(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) t[(a * 2 + b) * 2 + c] = (rule_number >> (4 * a + 2 * b + c)) & 1;
  return Rule1D(2, std::move(t));
}

/// The pair of states (q, u) certifying fixability: q quiescent and fixed in
/// context (u, q), u fixed in context (q, q).
struct FixabilityWitness {
  State quiescent = 0;
  State fixed = 1;
  bool operator==(const FixabilityWitness&) const = default;
};

/// Scans pairs in lexicographic order and returns the first witness.
inline std::optional<FixabilityWitness> is_fixable(const Rule1D& r) {
  const int n = r.states();
  for (int q = 0; q < n; ++q) {
    const State sq = static_cast<State>(q);
    if (r(sq, sq, sq) != sq) continue;
    for (int u = 0; u < n; ++u) {
      if (u == q) continue;
      const State su = static_cast<State>(u);
      if (r(su, sq, sq) == sq && r(sq, su, sq) == su) return FixabilityWitness{sq, su};
    }
  }
  return std::nullopt;
}

/// Finite window of an infinite line; every cell outside the window holds
/// `padding`. `origin` is the line position of window[0].
struct Tape {
  std::vector<State> window;
  long origin = 0;
  State padding = 0;

  State at(long pos) const {
    const long i = pos - origin;
    if (i < 0 || i >= static_cast<long>(window.size())) return padding;
    return window[static_cast<std::size_t>(i)];
  }

  long first() const { return origin; }
  long last() const { return origin + static_cast<long>(window.size()) - 1; }

  bool operator==(const Tape&) const = default;
};

/// One synchronous step. The window grows by one cell per side and the
/// padding evolves as the uniform background does, so the result is exact
/// for the infinite line whether or not the padding is quiescent.
inline Tape step_1d(const Rule1D& r, const Tape& t) {
  if (t.window.empty()) throw PreconditionError("step_1d: empty window");
  Tape out;
  out.origin = t.origin - 1;
  out.padding = r(t.padding, t.padding, t.padding);
  out.window.resize(t.window.size() + 2);
  for (long p = out.first(); p <= out.last(); ++p)
    out.window[static_cast<std::size_t>(p - out.origin)] = r(t.at(p - 1), t.at(p), t.at(p + 1));
  return out;
}

inline std::vector<Tape> run_1d(const Rule1D& r, const Tape& t, int steps) {
  std::vector<Tape> trace{t};
  trace.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i < steps; ++i) trace.push_back(step_1d(r, trace.back()));
  return trace;
}

inline nlohmann::json to_json(const Rule1D& r) {
  return nlohmann::json{{"states", r.states()}, {"table", r.table()}};
}

inline Rule1D rule1d_from_json(const nlohmann::json& j) {
  return Rule1D(j.at("states").get<int>(), j.at("table").get<std::vector<State>>());
}

}  // namespace hca
