#pragma once

// Hyperboloid-model geometry of the base tiles. Everything lives in R^{3,1}
// with the form <a,b> = a0 b0 + a1 b1 + a2 b2 - a3 b3; the planar tilings
// use the totally geodesic plane z = 0, so one set of formulas serves the
// pentagrid, the heptagrid and the dodecagrid.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "hca/grid.hpp"
#include "hca/symmetry.hpp"

namespace hca::geom {

// Extended precision: coordinates grow exponentially with the distance
// from the origin, and tile centres are compared at a fixed absolute tolerance.
using Real = long double;
using Vec3 = Eigen::Matrix<Real, 3, 1>;
using Vec4 = Eigen::Matrix<Real, 4, 1>;
using Mat4 = Eigen::Matrix<Real, 4, 4>;

inline Real minkowski(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

inline const Vec4& origin() {
  static const Vec4 o(0, 0, 0, 1);
  return o;
}

/// Reflection in the hyperplane orthogonal to the unit spacelike vector n.
inline Mat4 reflection(const Vec4& n) {
  const Mat4 J = Vec4(1, 1, 1, -1).asDiagonal();
  return Mat4::Identity() - 2 * n * (J * n).transpose();
}

/// Lorentz inverse J M^T J.
inline Mat4 lorentz_inverse(const Mat4& m) {
  const Mat4 J = Vec4(1, 1, 1, -1).asDiagonal();
  return J * m.transpose() * J;
}

/// Spatial part of the hyperboloid coordinates; tile centres are compared here.
inline Vec3 spatial(const Vec4& p) { return p.head<3>(); }

/// Klein-model coordinates of a point on the hyperboloid.
inline Vec3 klein(const Vec4& p) { return p.head<3>() / p[3]; }

/// Poincaré-model coordinates.
inline Vec3 poincare(const Vec4& p) { return p.head<3>() / (1.0 + p[3]); }

inline Real distance(const Vec4& a, const Vec4& b) {
  return std::acosh(std::max(Real(1), -minkowski(a, b)));
}

/// Point at hyperbolic distance `rho` from the origin in unit direction d.
inline Vec4 point_along(const Vec3& d, Real rho) {
  Vec4 v;
  v.head<3>() = std::sinh(rho) * d;
  v[3] = std::cosh(rho);
  return v;
}

/// Everything about the base tile centred at the origin.
struct BaseTile {
  GridKind grid{};
  int sides = 0;
  Real inradius = 0;                   // centre to side/face
  std::vector<Vec3> dirs;     // unit outward direction of each side/face
  std::vector<Vec4> normals;             // unit spacelike normals, interior is <v,n> < 0
  std::vector<Vec4> side_centers;        // foot of the perpendicular from the centre
  std::vector<Mat4> half_turns;          // base tile -> neighbour across slot i, fixing slot i
  std::vector<Vec4> vertices;            // polygon vertices in order (2D) / unused in 3D
  std::vector<std::array<int, 2>> edges; // 3D: pairs of adjacent faces
};

namespace detail {

inline Vec4 normal_for(const Vec3& d, Real r) {
  Vec4 n;
  n.head<3>() = std::cosh(r) * d;
  n[3] = std::sinh(r);
  return n;
}

inline Mat4 mirror_through_origin(const Vec3& w) {
  Mat4 s = Mat4::Identity();
  s.topLeftCorner<3, 3>() -= 2 * w * w.transpose();
  return s;
}

inline BaseTile make_polygon(GridKind g, int p, int q) {
  constexpr Real pi = std::numbers::pi_v<Real>;
  BaseTile t;
  t.grid = g;
  t.sides = p;
  t.inradius = std::acosh(std::cos(pi / q) / std::sin(pi / p));
  const Real circum = std::acosh(1 / (std::tan(pi / p) * std::tan(pi / q)));
  for (int i = 0; i < p; ++i) {
    // slot indices increase clockwise
    const Real th = -2 * pi * i / p;
    const Vec3 d(std::cos(th), std::sin(th), 0);
    t.dirs.push_back(d);
    t.normals.push_back(normal_for(d, t.inradius));
    t.side_centers.push_back(point_along(d, t.inradius));
    const Vec3 w(-std::sin(th), std::cos(th), 0);
    t.half_turns.push_back(reflection(t.normals.back()) * mirror_through_origin(w));
    const Real phi = th - pi / p;  // vertex between slot i and slot i+1
    t.vertices.push_back(point_along(Vec3(std::cos(phi), std::sin(phi), 0), circum));
  }
  return t;
}

inline BaseTile make_dodecahedron() {
  BaseTile t;
  t.grid = GridKind::Dodecagrid;
  t.sides = 12;
  const Real lat = std::atan(Real(0.5));
  const Real deg = std::numbers::pi_v<Real> / 180;
  t.dirs.resize(12);
  t.dirs[0] = Vec3(0, 0, -1);
  for (int k = 0; k < 5; ++k) {
    const Real a = -72 * k * deg;
    t.dirs[1 + k] = Vec3(std::cos(lat) * std::cos(a), std::cos(lat) * std::sin(a), -std::sin(lat));
  }
  for (int j = 0; j < 5; ++j) {
    const Real a = (36 - 72 * j) * deg;
    t.dirs[6 + j] = Vec3(std::cos(lat) * std::cos(a), std::cos(lat) * std::sin(a), std::sin(lat));
  }
  t.dirs[11] = Vec3(0, 0, 1);
  // right dihedral angles: tanh^2 r equals the cosine between adjacent face directions
  t.inradius = std::atanh(std::sqrt(1 / std::sqrt(Real(5))));
  for (int f = 0; f < 12; ++f) {
    t.normals.push_back(normal_for(t.dirs[f], t.inradius));
    t.side_centers.push_back(point_along(t.dirs[f], t.inradius));
    const int g = kFaceTable[f][0];
    const Vec3 w = t.dirs[f].cross(t.dirs[g]).normalized();
    t.half_turns.push_back(reflection(t.normals[f]) * mirror_through_origin(w));
  }
  for (int f = 0; f < 12; ++f)
    for (int g : kFaceTable[f])
      if (f < g) t.edges.push_back({f, g});
  return t;
}

}  // namespace detail

inline const BaseTile& base_tile(GridKind g) {
  static const BaseTile penta = detail::make_polygon(GridKind::Pentagrid, 5, 4);
  static const BaseTile hepta = detail::make_polygon(GridKind::Heptagrid, 7, 3);
  static const BaseTile dodeca = detail::make_dodecahedron();
  switch (g) {
    case GridKind::Pentagrid: return penta;
    case GridKind::Heptagrid: return hepta;
    case GridKind::Dodecagrid: return dodeca;
  }
  return penta;
}

/// Point of the base tile lying on every plane in `normals` (each pair
/// orthogonal), nearest to the centre along the given direction.
inline Vec4 point_on_planes(const BaseTile& t, const Vec3& dir, int face) {
  const Vec3 d = dir.normalized();
  const Real rho = std::atanh(std::tanh(t.inradius) / d.dot(t.dirs[face]));
  return point_along(d, rho);
}

/// Midpoint of the edge shared by adjacent faces f and g of the dodecahedron.
inline Vec4 edge_midpoint(const BaseTile& t, int f, int g) {
  return point_on_planes(t, t.dirs[f] + t.dirs[g], f);
}

/// Vertex shared by three mutually adjacent faces.
inline Vec4 dodeca_vertex(const BaseTile& t, int f, int g, int h) {
  return point_on_planes(t, t.dirs[f] + t.dirs[g] + t.dirs[h], f);
}

/// Unit normal of the geodesic (2D, z = 0) through two points.
inline Vec4 line_through(const Vec4& a, const Vec4& b) {
  // N with <N,a> = <N,b> = 0 and N_z = 0: solve in the (x, y, t) subspace.
  const Vec3 a3(a[0], a[1], a[3]), b3(b[0], b[1], b[3]);
  Vec3 c = a3.cross(b3);
  Vec4 n(c[0], c[1], 0, -c[2]);
  return n / std::sqrt(minkowski(n, n));
}

}  // namespace hca::geom
