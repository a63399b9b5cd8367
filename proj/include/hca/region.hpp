#pragma once

// Finite regions of the three tilings: side-numbered adjacency generated by
// half-turns of the base tile, the guideline (yellow line) with its
// left/right orientation, marker cells and geometry for rendering.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hca/geometry.hpp"
#include "hca/grid.hpp"
#include "hca/symmetry.hpp"

namespace hca {

/// Dense index of a cell in its Region; the central cell is 0.
enum class CellId : std::int32_t {};

inline constexpr CellId kBoundary{-1};

constexpr std::size_t idx(CellId c) { return static_cast<std::size_t>(static_cast<std::int32_t>(c)); }
constexpr CellId cell_id(std::size_t i) { return CellId{static_cast<std::int32_t>(i)}; }
constexpr bool is_boundary(CellId c) { return c == kBoundary; }

/// Largest time coordinate of a tile centre that build_region accepts.
inline constexpr double kMaxCoordinate = 1e9;

/// Maximum generation depth accepted by build_region.
constexpr int max_radius(GridKind g) { return is_planar(g) ? 10 : 6; }

/// Dedup tolerance on hyperboloid coordinates of tile centres.
inline constexpr double kDedupTolerance = 1e-7;

/// One cell of the guideline. `frame[p]` is the slot seen at canonical
/// position p: 2D position p is side number p+1 (1 = left neighbour),
/// dodecagrid position p is face p (0 on the reference plane, 1 left, 4 right).
struct GuidelineEntry {
  CellId cell = kBoundary;
  int index = 0;       // 0 is the central cell, increasing to the right
  int left_side = 0;   // side/face number of the left 1D neighbour
  int right_side = 0;  // side/face number of the right 1D neighbour
  std::vector<int> frame;
};

/// Canonical positions of the red markers around a guideline cell.
inline std::vector<int> marker_positions(GridKind g) {
  switch (g) {
    case GridKind::Pentagrid: return {1};
    case GridKind::Heptagrid: return {1, 3};
    case GridKind::Dodecagrid: return {0, 3, 9, 10};
  }
  return {};
}

/// Canonical positions of the left and right 1D neighbours.
constexpr std::array<int, 2> line_positions(GridKind g) {
  switch (g) {
    case GridKind::Pentagrid: return {0, 3};
    case GridKind::Heptagrid: return {0, 4};
    case GridKind::Dodecagrid: return {1, 4};
  }
  return {0, 0};
}

class Region {
 public:
  GridKind grid() const { return grid_; }
  int radius() const { return radius_; }
  int halfwidth() const { return halfwidth_; }
  int sides() const { return arity(grid_); }
  std::size_t size() const { return transforms_.size(); }

  /// Neighbour through slot (0-based).
  CellId neighbor_slot(CellId c, int slot) const { return adj_[idx(c) * sides() + slot]; }

  /// Neighbour through a side number (1..k for 2D, 0..11 for the dodecagrid).
  CellId neighbor(CellId c, int side) const {
    const int slot = slot_of_side(grid_, side);
    if (slot < 0 || slot >= sides()) throw PreconditionError("neighbor: side out of range");
    if (idx(c) >= size()) throw PreconditionError("neighbor: unknown cell");
    return neighbor_slot(c, slot);
  }

  /// Slot of `d` through which it sees `c`, or -1.
  int back_slot(CellId c, int slot) const { return back_[idx(c) * sides() + slot]; }

  bool frozen(CellId c) const {
    for (int s = 0; s < sides(); ++s)
      if (is_boundary(neighbor_slot(c, s))) return true;
    return false;
  }

  /// Graph distance from the guideline segment [-halfwidth, halfwidth].
  int depth(CellId c) const { return depth_[idx(c)]; }

  const geom::Mat4& transform(CellId c) const { return transforms_[idx(c)]; }
  geom::Vec4 center(CellId c) const { return transforms_[idx(c)] * geom::origin(); }

  const std::vector<GuidelineEntry>& guideline() const { return guideline_; }

  /// Guideline entry of a cell, if the cell is on the guideline.
  const GuidelineEntry* guideline_entry(CellId c) const {
    auto it = on_line_.find(static_cast<std::int32_t>(c));
    return it == on_line_.end() ? nullptr : &guideline_[it->second];
  }
  bool on_guideline(CellId c) const { return guideline_entry(c) != nullptr; }

  /// Cell whose centre is `p`, or kBoundary.
  CellId locate(const geom::Vec4& p) const {
    const auto k = geom::spatial(p);
    const Key base = key_of(k);
    CellId best = kBoundary;
    for_neighbors(base, [&](const Key& key) {
      auto it = buckets_.find(key);
      if (it == buckets_.end()) return;
      for (CellId c : it->second)
        if ((geom::spatial(center(c)) - k).norm() < kDedupTolerance) best = c;
    });
    return best;
  }

  /// Canonical frame of a tile with transform `m` if it is a guideline
  /// tile (right side of the line / above the reference plane).
  std::optional<std::vector<int>> yellow_frame(const geom::Mat4& m) const;

  /// Guideline frames beyond the generated guideline, `extra` cells on each
  /// side; used to place markers for cells just outside the region.
  std::vector<std::pair<geom::Mat4, std::vector<int>>> virtual_guideline(int extra) const;

  friend Region build_region(GridKind, int, int);

 private:
  using Key = std::array<long long, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 1469598103934665603ull;
      for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
      return h;
    }
  };
  static constexpr double kBucket = 10 * kDedupTolerance;

  static Key key_of(const geom::Vec3& k) {
    return {std::llround(k[0] / kBucket), std::llround(k[1] / kBucket), std::llround(k[2] / kBucket)};
  }
  template <class F>
  static void for_neighbors(const Key& base, F&& f) {
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy)
        for (long long dz = -1; dz <= 1; ++dz) f(Key{base[0] + dx, base[1] + dy, base[2] + dz});
  }

  CellId find_or_insert(const geom::Mat4& m, int depth, bool allow_insert);
  int matching_slot(CellId c, const geom::Vec4& face_point) const;

  GridKind grid_{};
  int radius_ = 0;
  int halfwidth_ = 0;
  std::vector<geom::Mat4> transforms_;
  std::vector<int> depth_;
  std::vector<CellId> adj_;
  std::vector<int> back_;
  std::vector<GuidelineEntry> guideline_;
  std::unordered_map<std::int32_t, std::size_t> on_line_;
  std::unordered_map<Key, std::vector<CellId>, KeyHash> buckets_;
  // line data: pentagrid/heptagrid use line_ only; dodecagrid uses plane0_ and line_
  geom::Vec4 line_;
  geom::Vec4 plane0_;
};

namespace detail {

inline bool same_plane(const geom::Vec4& normal, const geom::Vec4& face_point, const geom::Vec4& plane) {
  const geom::Real c = geom::minkowski(normal, plane);
  const geom::Real off = geom::minkowski(face_point, plane);  // sinh of the distance to the plane
  return std::abs(std::abs(c) - 1.0) < 1e-6 && std::abs(off) < 1e-7;
}

}  // namespace detail

inline std::optional<std::vector<int>> Region::yellow_frame(const geom::Mat4& m) const {
  const auto& base = geom::base_tile(grid_);
  const int k = base.sides;
  const geom::Vec4 c = m * geom::origin();
  std::vector<int> frame(k);
  if (grid_ == GridKind::Pentagrid) {
    if (geom::minkowski(c, line_) >= 0) return std::nullopt;
    for (int j = 0; j < k; ++j)
      if (detail::same_plane(m * base.normals[j], m * base.side_centers[j], line_)) {
        for (int p = 0; p < k; ++p) frame[p] = (j + 1 + p) % k;
        return frame;
      }
    return std::nullopt;
  }
  if (grid_ == GridKind::Heptagrid) {
    if (geom::minkowski(c, line_) >= 0) return std::nullopt;
    std::vector<bool> crossed(k);
    int count = 0;
    for (int j = 0; j < k; ++j) {
      const geom::Vec4 mp = m * base.side_centers[j];
      crossed[j] = std::abs(geom::minkowski(mp, line_)) < 1e-7;  // sinh of the distance to the line
      count += crossed[j];
    }
    if (count != 2) return std::nullopt;
    for (int j = 0; j < k; ++j)
      if (crossed[j] && crossed[(j + 1) % k]) {
        const int left = (j + 2) % k;
        for (int p = 0; p < k; ++p) frame[p] = (left + p) % k;
        return frame;
      }
    return std::nullopt;
  }
  // dodecagrid: above the reference plane, same side of the line plane
  if (geom::minkowski(c, plane0_) >= 0 || geom::minkowski(c, line_) >= 0) return std::nullopt;
  int a = -1, b = -1;
  for (int j = 0; j < k; ++j) {
    const geom::Vec4 n = m * base.normals[j];
    const geom::Vec4 fp = m * base.side_centers[j];
    if (detail::same_plane(n, fp, plane0_)) a = j;
    if (detail::same_plane(n, fp, line_)) b = j;
  }
  if (a < 0 || b < 0 || !faces_adjacent(a, b)) return std::nullopt;
  const FacePermutation mu = motion_mapping(0, a, 5, b);
  for (int p = 0; p < k; ++p) frame[p] = mu(p);
  return frame;
}

inline CellId Region::find_or_insert(const geom::Mat4& m, int depth, bool allow_insert) {
  const geom::Vec4 p = m * geom::origin();
  // rounding error grows with the coordinates; past this bound it can
  // reach the dedup tolerance
  if (p[3] > kMaxCoordinate)
    throw TooDeepError("build_region: tile coordinates too large for the dedup tolerance; reduce radius or halfwidth");
  const auto k = geom::spatial(p);
  const Key base = key_of(k);
  CellId found = kBoundary;
  geom::Real nearest = 1;
  for_neighbors(base, [&](const Key& key) {
    auto it = buckets_.find(key);
    if (it == buckets_.end()) return;
    for (CellId c : it->second) {
      const geom::Real d = (geom::spatial(center(c)) - k).norm();
      nearest = std::min(nearest, d);
      if (d < kDedupTolerance) found = c;
    }
  });
  if (found == kBoundary && nearest < 10 * kDedupTolerance)
    throw TooDeepError("build_region: tile centres closer than 10x the dedup tolerance; reduce radius or halfwidth");
  if (found != kBoundary || !allow_insert) return found;
  const CellId id = cell_id(transforms_.size());
  transforms_.push_back(m);
  depth_.push_back(depth);
  adj_.insert(adj_.end(), sides(), kBoundary);
  back_.insert(back_.end(), sides(), -1);
  buckets_[base].push_back(id);
  return id;
}

inline int Region::matching_slot(CellId c, const geom::Vec4& face_point) const {
  const auto& base = geom::base_tile(grid_);
  const auto target = geom::spatial(face_point);
  int best = -1;
  geom::Real best_d = 1;
  for (int j = 0; j < base.sides; ++j) {
    const geom::Real d = (geom::spatial(transform(c) * base.side_centers[j]) - target).norm();
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  if (best_d > kDedupTolerance) throw TooDeepError("build_region: shared side could not be matched");
  return best;
}

inline std::vector<std::pair<geom::Mat4, std::vector<int>>> Region::virtual_guideline(int extra) const {
  std::vector<std::pair<geom::Mat4, std::vector<int>>> out;
  const auto& base = geom::base_tile(grid_);
  const auto [lpos, rpos] = line_positions(grid_);
  for (int dir : {-1, 1}) {
    const GuidelineEntry& end = dir < 0 ? guideline_.front() : guideline_.back();
    geom::Mat4 m = transform(end.cell);
    std::vector<int> frame = end.frame;
    for (int i = 0; i < extra; ++i) {
      m = m * base.half_turns[frame[dir < 0 ? lpos : rpos]];
      auto f = yellow_frame(m);
      if (!f) throw std::logic_error("virtual guideline left the line");
      frame = *f;
      out.emplace_back(m, frame);
    }
  }
  return out;
}

/// All cells within graph distance `radius` of the guideline segment
/// [-halfwidth, +halfwidth]. The guideline is supported by side 1 of the
/// central cell (pentagrid), crosses the mid-points of its sides 1 and 2
/// (heptagrid), or is the edge between its faces 0 and 5 (dodecagrid).
inline Region build_region(GridKind grid, int radius, int halfwidth) {
  if (radius < 1 || radius > max_radius(grid))
    throw PreconditionError("build_region: radius must be in 1.." + std::to_string(max_radius(grid)));
  if (halfwidth < 0) throw PreconditionError("build_region: halfwidth must be non-negative");
  Region r;
  r.grid_ = grid;
  r.radius_ = radius;
  r.halfwidth_ = halfwidth;
  const auto& base = geom::base_tile(grid);
  const int k = base.sides;
  switch (grid) {
    case GridKind::Pentagrid: r.line_ = base.normals[0]; break;
    case GridKind::Heptagrid: r.line_ = geom::line_through(base.side_centers[0], base.side_centers[1]); break;
    case GridKind::Dodecagrid:
      r.plane0_ = base.normals[0];
      r.line_ = base.normals[5];
      break;
  }
  if (geom::minkowski(geom::origin(), r.line_) > 0) r.line_ = -r.line_;

  const CellId centre = r.find_or_insert(geom::Mat4::Identity(), 0, true);
  const auto centre_frame = r.yellow_frame(geom::Mat4::Identity());
  if (!centre_frame) throw std::logic_error("central cell is not on its own guideline");
  const auto [lpos, rpos] = line_positions(grid);

  // segment cells first, at depth 0
  std::deque<CellId> queue{centre};
  for (int dir : {-1, 1}) {
    geom::Mat4 m = geom::Mat4::Identity();
    std::vector<int> frame = *centre_frame;
    for (int i = 0; i < halfwidth; ++i) {
      m = m * base.half_turns[frame[dir < 0 ? lpos : rpos]];
      auto f = r.yellow_frame(m);
      if (!f) throw std::logic_error("guideline walk left the line");
      frame = *f;
      queue.push_back(r.find_or_insert(m, 0, true));
    }
  }

  // breadth-first growth; links every side whose neighbour exists
  std::vector<geom::Vec4> next_centres(k);
  for (int j = 0; j < k; ++j) next_centres[j] = base.half_turns[j] * geom::origin();
  while (!queue.empty()) {
    const CellId c = queue.front();
    queue.pop_front();
    const int d = r.depth(c);
    for (int j = 0; j < k; ++j) {
      if (!is_boundary(r.neighbor_slot(c, j))) continue;
      const geom::Mat4 m = r.transform(c) * base.half_turns[j];
      const std::size_t before = r.size();
      const CellId e = r.find_or_insert(m, d + 1, d < radius);
      if (is_boundary(e)) continue;
      if (r.size() > before) queue.push_back(e);
      const int back = r.size() > before ? j : r.matching_slot(e, r.transform(c) * base.side_centers[j]);
      r.adj_[idx(c) * k + j] = e;
      r.back_[idx(c) * k + j] = back;
      r.adj_[idx(e) * k + back] = c;
      r.back_[idx(e) * k + back] = j;
    }
  }

  // the guideline as far as it reaches inside the region
  std::deque<GuidelineEntry> line;
  auto entry_for = [&](CellId c, int index, std::vector<int> frame) {
    GuidelineEntry e;
    e.cell = c;
    e.index = index;
    e.left_side = side_of_slot(grid, frame[lpos]);
    e.right_side = side_of_slot(grid, frame[rpos]);
    e.frame = std::move(frame);
    return e;
  };
  line.push_back(entry_for(centre, 0, *centre_frame));
  for (int dir : {-1, 1}) {
    GuidelineEntry cur = line[dir < 0 ? 0 : line.size() - 1];
    for (;;) {
      const int slot = cur.frame[dir < 0 ? lpos : rpos];
      const CellId n = r.neighbor_slot(cur.cell, slot);
      if (is_boundary(n)) break;
      auto f = r.yellow_frame(r.transform(n));
      if (!f) throw std::logic_error("guideline neighbour is not a guideline cell");
      if ((*f)[dir < 0 ? rpos : lpos] != r.back_slot(cur.cell, slot))
        throw std::logic_error("guideline orientation is inconsistent");
      cur = entry_for(n, cur.index + dir, *f);
      if (dir < 0) line.push_front(cur); else line.push_back(cur);
    }
  }
  r.guideline_.assign(line.begin(), line.end());
  for (std::size_t i = 0; i < r.guideline_.size(); ++i)
    r.on_line_[static_cast<std::int32_t>(r.guideline_[i].cell)] = i;
  return r;
}

/// Guideline entries; a reversed orientation swaps left and right.
inline std::vector<GuidelineEntry> guideline(const Region& r, bool reversed = false) {
  std::vector<GuidelineEntry> g = r.guideline();
  if (!reversed) return g;
  std::reverse(g.begin(), g.end());
  for (auto& e : g) {
    e.index = -e.index;
    std::swap(e.left_side, e.right_side);
  }
  return g;
}

/// Red markers around guideline cells for the n-state constructions.
struct MarkerLayout {
  /// For each guideline cell in the region: sides carrying markers.
  std::map<CellId, std::vector<int>> sides;
  /// Every marker cell present in the region, including markers of
  /// guideline cells just outside it.
  std::set<CellId> cells;
};

inline MarkerLayout marker_cells(const Region& r, Theorem theorem) {
  const GridKind g = r.grid();
  if (theorem == Theorem::T1) throw PreconditionError("marker_cells: the n+1 construction has no markers");
  if (theorem == Theorem::T3 && g != GridKind::Pentagrid)
    throw PreconditionError("marker_cells: T3 applies to the pentagrid only");
  if (theorem == Theorem::T4 && g == GridKind::Pentagrid)
    throw PreconditionError("marker_cells: T4 applies to the heptagrid and the dodecagrid");
  const auto positions = marker_positions(g);
  const auto& base = geom::base_tile(g);
  MarkerLayout out;
  for (const auto& e : r.guideline()) {
    auto& sides = out.sides[e.cell];
    for (int p : positions) {
      sides.push_back(side_of_slot(g, e.frame[p]));
      const CellId m = r.neighbor_slot(e.cell, e.frame[p]);
      if (!is_boundary(m)) out.cells.insert(m);
    }
  }
  const CellId centre = cell_id(0);
  for (int p : positions)
    if (is_boundary(r.neighbor_slot(centre, r.guideline_entry(centre)->frame[p])))
      throw PreconditionError("marker_cells: region too small to contain the markers");
  for (const auto& [m, frame] : r.virtual_guideline(2))
    for (int p : positions) {
      const CellId c = r.locate(m * base.half_turns[frame[p]] * geom::origin());
      if (!is_boundary(c)) out.cells.insert(c);
    }
  return out;
}

/// Cells sharing only a vertex with `c` (2D): the common neighbour of two
/// consecutive side-neighbours other than c.
inline std::vector<CellId> vertex_neighbors(const Region& r, CellId c) {
  std::vector<CellId> out;
  const int k = r.sides();
  for (int i = 0; i < k; ++i) {
    const CellId a = r.neighbor_slot(c, i), b = r.neighbor_slot(c, (i + 1) % k);
    if (is_boundary(a) || is_boundary(b)) continue;
    for (int s = 0; s < k; ++s) {
      const CellId x = r.neighbor_slot(a, s);
      if (is_boundary(x) || x == c || x == b) continue;
      bool adjacent_to_c = false;
      for (int t = 0; t < k; ++t) adjacent_to_c |= r.neighbor_slot(c, t) == x;
      if (adjacent_to_c) continue;
      for (int t = 0; t < k; ++t)
        if (r.neighbor_slot(b, t) == x) out.push_back(x);
    }
  }
  return out;
}

/// Number of region cells around every edge of the cells with depth at most
/// `max_depth` (dodecagrid). Each entry is the count for one distinct edge.
inline std::vector<int> cells_around_edges(const Region& r, int max_depth) {
  if (r.grid() != GridKind::Dodecagrid) throw PreconditionError("cells_around_edges: dodecagrid only");
  const auto& base = geom::base_tile(r.grid());
  std::vector<geom::Vec4> mids;
  for (const auto& e : base.edges) mids.push_back(geom::edge_midpoint(base, e[0], e[1]));
  struct KeyCmp {
    bool operator()(const std::array<long long, 3>& a, const std::array<long long, 3>& b) const { return a < b; }
  };
  std::map<std::array<long long, 3>, std::set<CellId>, KeyCmp> around;
  const auto key = [](const geom::Vec4& p) {
    const auto k = geom::spatial(p);
    return std::array<long long, 3>{std::llround(k[0] * 1e4), std::llround(k[1] * 1e4), std::llround(k[2] * 1e4)};
  };
  for (std::size_t i = 0; i < r.size(); ++i)
    for (const auto& m : mids) around[key(r.transform(cell_id(i)) * m)].insert(cell_id(i));
  std::vector<int> counts;
  std::set<std::array<long long, 3>, KeyCmp> seen;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r.depth(cell_id(i)) > max_depth) continue;
    for (const auto& m : mids) {
      const auto kk = key(r.transform(cell_id(i)) * m);
      if (seen.insert(kk).second) counts.push_back(static_cast<int>(around[kk].size()));
    }
  }
  return counts;
}

inline nlohmann::json to_json(const Region& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const CellId c = cell_id(i);
    nlohmann::json nb = nlohmann::json::array();
    for (int s = 0; s < r.sides(); ++s) {
      const CellId n = r.neighbor_slot(c, s);
      if (is_boundary(n)) nb.push_back(nullptr); else nb.push_back(idx(n));
    }
    const auto p = r.center(c);
    cells.push_back({{"id", i}, {"depth", r.depth(c)}, {"center", {p[0], p[1], p[2], p[3]}}, {"neighbors", nb}});
  }
  nlohmann::json line = nlohmann::json::array();
  for (const auto& e : r.guideline())
    line.push_back({{"cell", idx(e.cell)}, {"index", e.index}, {"left_side", e.left_side}, {"right_side", e.right_side}});
  return {{"grid", to_string(r.grid())},
          {"radius", r.radius()},
          {"halfwidth", r.halfwidth()},
          {"first_side", first_side(r.grid())},
          {"cells", cells},
          {"guideline", line}};
}

}  // namespace hca
