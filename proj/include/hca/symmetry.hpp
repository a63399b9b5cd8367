#pragma once

// Rotation algebra for rule contexts: cyclic shifts of pentagons and
// heptagons, the 60 orientation-preserving motions of the dodecahedron,
// minimal forms and the rotation-invariance checker.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hca/grid.hpp"

namespace hca {

/// For each face 0..11, the five faces around it in clockwise order as seen
/// from outside the dodecahedron.
using FaceAdjacencyTable = std::array<std::array<int, 5>, 12>;

inline constexpr FaceAdjacencyTable kFaceTable = {{
    {1, 5, 4, 3, 2},
    {0, 2, 7, 6, 5},
    {0, 3, 8, 7, 1},
    {0, 4, 9, 8, 2},
    {0, 5, 10, 9, 3},
    {0, 1, 6, 10, 4},
    {1, 7, 11, 10, 5},
    {1, 2, 8, 11, 6},
    {2, 3, 9, 11, 7},
    {3, 4, 10, 11, 8},
    {4, 5, 6, 11, 9},
    {6, 7, 8, 9, 10},
}};

/// Position of `g` in the row of `f`, or -1.
constexpr int position_in_row(int f, int g) {
  for (int k = 0; k < 5; ++k)
    if (kFaceTable[f][k] == g) return k;
  return -1;
}

constexpr bool faces_adjacent(int f, int g) { return position_in_row(f, g) >= 0; }

/// A positive motion of the dodecahedron acting on face numbers.
class FacePermutation {
 public:
  FacePermutation() {
    for (int i = 0; i < 12; ++i) img_[i] = i;
  }
  explicit FacePermutation(const std::array<int, 12>& images) : img_(images) {}

  int operator()(int face) const { return img_.at(face); }
  const std::array<int, 12>& images() const { return img_; }
  int f0() const { return img_[0]; }
  int f1() const { return img_[1]; }

  /// (a * b)(x) = a(b(x))
  friend FacePermutation operator*(const FacePermutation& a, const FacePermutation& b) {
    std::array<int, 12> r{};
    for (int i = 0; i < 12; ++i) r[i] = a.img_[b.img_[i]];
    return FacePermutation(r);
  }

  FacePermutation inverse() const {
    std::array<int, 12> r{};
    for (int i = 0; i < 12; ++i) r[img_[i]] = i;
    return FacePermutation(r);
  }

  bool is_identity() const { return *this == FacePermutation(); }

  /// Maps every pair of adjacent faces to adjacent faces and keeps the
  /// clockwise order of each row.
  bool preserves_adjacency() const {
    for (int f = 0; f < 12; ++f)
      for (int g : kFaceTable[f])
        if (!faces_adjacent(img_[f], img_[g])) return false;
    return true;
  }

  auto operator<=>(const FacePermutation&) const = default;

 private:
  std::array<int, 12> img_;
};

namespace detail {

// Fill the images of the ring around `face`, starting from a neighbour whose
// image is already known.
inline void turn_around(std::array<int, 12>& img, int face) {
  const auto& row = kFaceTable[face];
  int start = -1;
  for (int k = 0; k < 5; ++k)
    if (img[row[k]] >= 0) {
      start = k;
      break;
    }
  if (start < 0 || img[face] < 0) throw std::logic_error("rotation algorithm: no anchor");
  const int q = position_in_row(img[face], img[row[start]]);
  if (q < 0) throw std::logic_error("rotation algorithm: anchor not adjacent");
  const auto& target = kFaceTable[img[face]];
  for (int k = 0; k < 5; ++k) {
    const int src = row[(start + k) % 5];
    const int dst = target[(q + k) % 5];
    if (img[src] >= 0 && img[src] != dst) throw std::logic_error("rotation algorithm: inconsistent table");
    img[src] = dst;
  }
}

}  // namespace detail

/// The motion sending face 0 to `f0` and face 1 to `f1`; `f1` must share an
/// edge with `f0`. Propagates around faces 1, 5, 7 and 8 in that order.
inline FacePermutation motion_from(int f0, int f1) {
  if (f0 < 0 || f0 > 11 || !faces_adjacent(f0, f1))
    throw PreconditionError("motion_from: f1 must be adjacent to f0");
  std::array<int, 12> img;
  img.fill(-1);
  img[0] = f0;
  img[1] = f1;
  for (int face : {1, 5, 7, 8}) detail::turn_around(img, face);
  return FacePermutation(img);
}

/// All 60 positive motions, ordered by (f0, position of f1 in row f0).
inline const std::vector<FacePermutation>& enumerate_motions() {
  static const std::vector<FacePermutation> motions = [] {
    std::vector<FacePermutation> out;
    out.reserve(60);
    for (int f0 = 0; f0 < 12; ++f0)
      for (int f1 : kFaceTable[f0]) out.push_back(motion_from(f0, f1));
    // row 0 starts with face 1, so the identity comes first
    return out;
  }();
  return motions;
}

/// The unique motion with prescribed images of two adjacent faces a, b.
inline FacePermutation motion_mapping(int a, int fa, int b, int fb) {
  for (const auto& m : enumerate_motions())
    if (m(a) == fa && m(b) == fb) return m;
  throw PreconditionError("no positive motion maps the given faces");
}

/// A rotation acting on neighbour positions: rotated[i] = ctx[perm[i]].
using PositionPermutation = std::vector<int>;

/// Cyclic shifts for 2D grids, the 60 motions for the dodecagrid.
inline const std::vector<PositionPermutation>& rotation_group(GridKind g) {
  static const auto build = [](GridKind kind) {
    std::vector<PositionPermutation> out;
    if (kind == GridKind::Dodecagrid) {
      for (const auto& m : enumerate_motions())
        out.emplace_back(m.images().begin(), m.images().end());
    } else {
      const int k = arity(kind);
      for (int s = 0; s < k; ++s) {
        PositionPermutation p(k);
        for (int i = 0; i < k; ++i) p[i] = (i + s) % k;
        out.push_back(std::move(p));
      }
    }
    return out;
  };
  static const std::vector<PositionPermutation> penta = build(GridKind::Pentagrid);
  static const std::vector<PositionPermutation> hepta = build(GridKind::Heptagrid);
  static const std::vector<PositionPermutation> dodeca = build(GridKind::Dodecagrid);
  switch (g) {
    case GridKind::Pentagrid: return penta;
    case GridKind::Heptagrid: return hepta;
    case GridKind::Dodecagrid: return dodeca;
  }
  return penta;
}

/// Current state of a cell and of its neighbours in side/face order.
struct RuleContext {
  State self = 0;
  std::vector<State> neighbors;

  auto operator<=>(const RuleContext&) const = default;
};

struct Rule {
  RuleContext context;
  State next = 0;

  auto operator<=>(const Rule&) const = default;
};

inline void check_arity(const RuleContext& ctx, GridKind g) {
  if (static_cast<int>(ctx.neighbors.size()) != arity(g))
    throw PreconditionError("context arity does not match grid " + std::string(to_string(g)));
}

inline RuleContext rotated_context(const RuleContext& ctx, const PositionPermutation& motion) {
  if (motion.size() != ctx.neighbors.size()) throw PreconditionError("rotated_context: arity mismatch");
  RuleContext out{ctx.self, std::vector<State>(ctx.neighbors.size())};
  for (std::size_t i = 0; i < motion.size(); ++i) out.neighbors[i] = ctx.neighbors[motion[i]];
  return out;
}

inline RuleContext rotated_context(const RuleContext& ctx, const FacePermutation& motion) {
  return rotated_context(ctx, PositionPermutation(motion.images().begin(), motion.images().end()));
}

/// Cyclic shift by `k` positions (2D).
inline RuleContext rotated_context(const RuleContext& ctx, int k) {
  const int n = static_cast<int>(ctx.neighbors.size());
  PositionPermutation p(n);
  for (int i = 0; i < n; ++i) p[i] = (((i + k) % n) + n) % n;
  return rotated_context(ctx, p);
}

/// Lexicographically least rotated form. `state_rank` gives the position of
/// each state in the chosen total order; empty means numeric order.
inline RuleContext minimal_form(const RuleContext& ctx, GridKind g, std::span<const int> state_rank = {}) {
  check_arity(ctx, g);
  const auto less = [&](const std::vector<State>& a, const std::vector<State>& b) {
    if (state_rank.empty()) return a < b;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](State x, State y) { return state_rank[x] < state_rank[y]; });
  };
  const auto& group = rotation_group(g);
  std::vector<State> best = ctx.neighbors;
  std::vector<State> cur(ctx.neighbors.size());
  for (const auto& m : group) {
    for (std::size_t i = 0; i < m.size(); ++i) cur[i] = ctx.neighbors[m[i]];
    if (less(cur, best)) best = cur;
  }
  return {ctx.self, std::move(best)};
}

/// Rules whose minimal forms coincide but whose new states differ.
struct ConflictGroup {
  RuleContext minimal;
  std::vector<Rule> rules;
};

struct InvarianceReport {
  std::size_t rules_checked = 0;
  std::size_t orbits = 0;
  std::vector<ConflictGroup> conflicts;
  bool ok() const { return conflicts.empty(); }
};

inline InvarianceReport check_rotation_invariance(std::span<const Rule> rules, GridKind g) {
  std::map<RuleContext, std::vector<const Rule*>> groups;
  for (const auto& r : rules) groups[minimal_form(r.context, g)].push_back(&r);
  InvarianceReport rep;
  rep.rules_checked = rules.size();
  rep.orbits = groups.size();
  for (auto& [minimal, members] : groups) {
    const bool single = std::all_of(members.begin(), members.end(),
                                    [&](const Rule* r) { return r->next == members.front()->next; });
    if (single) continue;
    ConflictGroup cg{minimal, {}};
    for (const Rule* r : members) cg.rules.push_back(*r);
    std::sort(cg.rules.begin(), cg.rules.end());
    cg.rules.erase(std::unique(cg.rules.begin(), cg.rules.end()), cg.rules.end());
    rep.conflicts.push_back(std::move(cg));
  }
  return rep;
}

}  // namespace hca
