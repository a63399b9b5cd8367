#pragma once

// SVG rendering on the Poincaré disk. Planar grids draw every cell; the
// dodecagrid draws its trace on the reference plane: the face-0 pentagons
// of the cells standing on it, with a dot for the mirror cell below and
// small squares for the other coloured cells, projected onto the plane.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hca/embed.hpp"
#include "hca/engine.hpp"
#include "hca/region.hpp"

namespace hca {

struct RenderSpec {
  /// Fill of off-line cells by state.
  std::map<State, std::string> colours;
  /// Fill of guideline cells by state.
  std::map<State, std::string> line_colours;
  /// Cells deeper than this are not drawn; negative draws nothing.
  int depth = 1000;
  double size = 800;
  /// Off-line state not worth a marker in the dodecagrid trace.
  std::optional<State> background;
};

/// Yellow shades for A-states on the line, blue for the extra state, green
/// for W and red for B off the line.
inline RenderSpec default_render_spec(const HcaAutomaton& b) {
  static const char* yellows[] = {"#fff176", "#f9a825", "#ffd54f", "#f57f17", "#fff9c4", "#ffb300"};
  RenderSpec s;
  for (int i = 0; i < b.a_states(); ++i) s.line_colours[static_cast<State>(i)] = yellows[i % 6];
  if (b.blue()) {
    s.colours[*b.blue()] = "#3f6fd8";
    s.background = *b.blue();
    for (int i = 0; i < b.a_states(); ++i) s.colours[static_cast<State>(i)] = yellows[i % 6];
  } else {
    for (int i = 0; i < b.n_states(); ++i) s.colours[static_cast<State>(i)] = "#bdbdbd";
    s.colours[b.white()] = "#66bb6a";
    s.colours[b.red()] = "#e53935";
    s.background = b.white();
  }
  return s;
}

/// A blank region: white cells, a yellow line.
inline RenderSpec blank_render_spec() {
  RenderSpec s;
  s.colours[0] = "#ffffff";
  s.line_colours[0] = "#fff176";
  s.background = 0;
  return s;
}

inline RenderSpec render_spec_from_json(const nlohmann::json& j, RenderSpec base = {}) {
  const auto read = [](const nlohmann::json& m, std::map<State, std::string>& out) {
    for (auto it = m.begin(); it != m.end(); ++it) out[static_cast<State>(std::stoi(it.key()))] = it.value().get<std::string>();
  };
  if (j.contains("colours")) read(j.at("colours"), base.colours);
  if (j.contains("line_colours")) read(j.at("line_colours"), base.line_colours);
  if (j.contains("depth")) base.depth = j.at("depth").get<int>();
  if (j.contains("size")) base.size = j.at("size").get<double>();
  return base;
}

namespace detail {

inline std::string fixed6(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Lf", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline const std::string& colour_for(const std::map<State, std::string>& m, State s) {
  auto it = m.find(s);
  if (it == m.end()) throw PreconditionError("render: no colour for state " + std::to_string(s));
  return it->second;
}

// Boost along z moving the plane of face 0 of the central dodecahedron to z = 0.
inline geom::Mat4 plane0_boost() {
  const geom::Real r = geom::base_tile(GridKind::Dodecagrid).inradius;
  geom::Mat4 m = geom::Mat4::Identity();
  m(2, 2) = std::cosh(r);
  m(2, 3) = std::sinh(r);
  m(3, 2) = std::sinh(r);
  m(3, 3) = std::cosh(r);
  return m;
}

}  // namespace detail

inline std::string render_svg(const Region& region, const std::vector<State>& states, const RenderSpec& spec) {
  if (states.size() != region.size()) throw PreconditionError("render: state count does not match the region");
  const double half = spec.size / 2, scale = spec.size / 2 - 10;
  std::string body;
  const auto pt = [&](geom::Real x, geom::Real y) { return detail::fixed6(half + scale * x) + "," + detail::fixed6(half - scale * y); };
  const auto fill_of = [&](CellId c) {
    return detail::colour_for(region.on_guideline(c) ? spec.line_colours : spec.colours, states[idx(c)]);
  };
  const auto polygon = [&](const std::vector<geom::Vec4>& pts, const std::string& fill) {
    body += "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto p = geom::poincare(pts[i]);
      body += (i ? " " : "") + pt(p[0], p[1]);
    }
    body += "\" fill=\"" + fill + "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
  };
  const auto& base = geom::base_tile(region.grid());
  if (is_planar(region.grid())) {
    for (std::size_t i = 0; i < region.size(); ++i) {
      const CellId c = cell_id(i);
      if (region.depth(c) > spec.depth) continue;
      std::vector<geom::Vec4> pts;
      for (const auto& v : base.vertices) pts.push_back(region.transform(c) * v);
      polygon(pts, fill_of(c));
    }
  } else {
    const geom::Mat4 T = detail::plane0_boost();
    const geom::Vec4 plane = base.normals[0];
    std::vector<std::string> dots, squares;
    for (std::size_t i = 0; i < region.size(); ++i) {
      const CellId c = cell_id(i);
      if (region.depth(c) > spec.depth) continue;
      const geom::Mat4& m = region.transform(c);
      int face = -1;
      for (int f = 0; f < 12; ++f)
        if (detail::same_plane(m * base.normals[f], m * base.side_centers[f], plane)) face = f;
      const bool above = geom::minkowski(m * geom::origin(), plane) < 0;
      if (face >= 0 && above) {
        std::vector<geom::Vec4> pts;
        const auto& row = kFaceTable[face];
        for (int k = 0; k < 5; ++k)
          pts.push_back(T * m * geom::dodeca_vertex(base, face, row[k], row[(k + 1) % 5]));
        polygon(pts, fill_of(c));
        continue;
      }
      const State s = states[i];
      if (spec.background && s == *spec.background && !region.on_guideline(c)) continue;
      geom::Vec4 p = T * m * geom::origin();
      p[2] = 0;
      p[3] = std::sqrt(1 + p[0] * p[0] + p[1] * p[1]);
      const auto q = geom::poincare(p);
      if (face >= 0) {
        dots.push_back("<circle cx=\"" + detail::fixed6(half + scale * q[0]) + "\" cy=\"" +
                       detail::fixed6(half - scale * q[1]) + "\" r=\"" + detail::fixed6(scale * 0.02 * (1 - q.squaredNorm())) +
                       "\" fill=\"" + fill_of(c) + "\" stroke=\"#333333\" stroke-width=\"0.3\"/>\n");
      } else {
        const geom::Real w = scale * 0.02 * (1 - q.squaredNorm());
        squares.push_back("<rect x=\"" + detail::fixed6(half + scale * q[0] - w / 2) + "\" y=\"" +
                          detail::fixed6(half - scale * q[1] - w / 2) + "\" width=\"" + detail::fixed6(w) +
                          "\" height=\"" + detail::fixed6(w) + "\" fill=\"" + fill_of(c) +
                          "\" stroke=\"#333333\" stroke-width=\"0.3\"/>\n");
      }
    }
    for (const auto& d : dots) body += d;
    for (const auto& s : squares) body += s;
  }
  const std::string sz = detail::fixed6(spec.size);
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + sz + "\" height=\"" + sz + "\" viewBox=\"0 0 " + sz +
         " " + sz + "\">\n<circle cx=\"" + detail::fixed6(half) + "\" cy=\"" + detail::fixed6(half) + "\" r=\"" +
         detail::fixed6(scale) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n" + body + "</svg>\n";
}

}  // namespace hca
