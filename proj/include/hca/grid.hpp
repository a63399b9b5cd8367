#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hca {

/// States of every automaton in the library are small non-negative integers.
using State = std::uint8_t;

enum class GridKind { Pentagrid, Heptagrid, Dodecagrid };

/// Number of sides (faces for the dodecagrid) of a cell.
constexpr int arity(GridKind g) {
  switch (g) {
    case GridKind::Pentagrid: return 5;
    case GridKind::Heptagrid: return 7;
    case GridKind::Dodecagrid: return 12;
  }
  return 0;
}

constexpr bool is_planar(GridKind g) { return g != GridKind::Dodecagrid; }

/// 2D sides are numbered 1..k, dodecahedron faces 0..11.
constexpr int first_side(GridKind g) { return is_planar(g) ? 1 : 0; }
constexpr int slot_of_side(GridKind g, int side) { return side - first_side(g); }
constexpr int side_of_slot(GridKind g, int slot) { return slot + first_side(g); }

inline std::string_view to_string(GridKind g) {
  switch (g) {
    case GridKind::Pentagrid: return "pentagrid";
    case GridKind::Heptagrid: return "heptagrid";
    case GridKind::Dodecagrid: return "dodecagrid";
  }
  return "?";
}

inline GridKind parse_grid(std::string_view s) {
  if (s == "pentagrid" || s == "penta" || s == "{5,4}") return GridKind::Pentagrid;
  if (s == "heptagrid" || s == "hepta" || s == "{7,3}") return GridKind::Heptagrid;
  if (s == "dodecagrid" || s == "dodeca" || s == "{5,3,4}") return GridKind::Dodecagrid;
  throw std::invalid_argument("unknown grid kind: " + std::string(s));
}

/// Which construction produced an automaton.
enum class Theorem { T1, T3, T4 };

inline std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::T1: return "t1";
    case Theorem::T3: return "t3";
    case Theorem::T4: return "t4";
  }
  return "?";
}

inline Theorem parse_theorem(std::string_view s) {
  if (s == "t1" || s == "T1" || s == "1") return Theorem::T1;
  if (s == "t3" || s == "T3" || s == "3") return Theorem::T3;
  if (s == "t4" || s == "T4" || s == "4") return Theorem::T4;
  throw std::invalid_argument("unknown theorem: " + std::string(s));
}

// Error types. Precondition failures are exceptions; verification
// findings are report content and never thrown.

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The requested depth cannot be deduplicated reliably at the fixed tolerance.
struct TooDeepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotFixableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Stepping past the light-cone guarantee.
struct ValidityExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hca
