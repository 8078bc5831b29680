#pragma once
// Surfaces shared by the test binaries.

#include <random>
#include <string>
#include <vector>

#include "flatlam/surface.hpp"

namespace fixtures {

using flatlam::EdgeRef;
using flatlam::Gluing;
using flatlam::GluingKind;
using flatlam::Polygon;
using flatlam::Rational;
using flatlam::SurfaceData;
using flatlam::Vec2;

inline Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Polygon rect(std::string id, Rational x0, Rational y0, Rational w, Rational h) {
  return Polygon{std::move(id), {Vec2(x0, y0), Vec2(x0 + w, y0), Vec2(x0 + w, y0 + h), Vec2(x0, y0 + h)}};
}

inline Gluing tr(std::size_t p, std::size_t i, std::size_t q, std::size_t j) {
  return Gluing{EdgeRef{p, i}, EdgeRef{q, j}, GluingKind::Translation};
}
inline Gluing fl(std::size_t p, std::size_t i, std::size_t q, std::size_t j) {
  return Gluing{EdgeRef{p, i}, EdgeRef{q, j}, GluingKind::Flip};
}

// Unit square, edges 0 bottom, 1 right, 2 top, 3 left.
inline SurfaceData torus() {
  return SurfaceData{{rect("T", 0, 0, 1, 1)}, {tr(0, 0, 0, 2), tr(0, 1, 0, 3)}};
}

// A = [0,1]^2, B = [1,2]x[0,1], C = [0,1]x[1,2].
inline SurfaceData l_surface() {
  SurfaceData d;
  d.polygons = {rect("A", 0, 0, 1, 1), rect("B", 1, 0, 1, 1), rect("C", 0, 1, 1, 1)};
  d.gluings = {tr(0, 1, 1, 3), tr(1, 1, 0, 3), tr(0, 2, 2, 0), tr(2, 2, 0, 0), tr(1, 2, 1, 0), tr(2, 1, 2, 3)};
  return d;
}

// Square-tiled-like complex of n congruent w x h rectangles whose horizontal
// and vertical edges are paired by random matchings (translation when the
// pair is bottom/top or right/left, flip otherwise). May be invalid.
inline SurfaceData random_rectangles(std::mt19937& rng, int n, Rational w, Rational h) {
  SurfaceData d;
  for (int i = 0; i < n; ++i) d.polygons.push_back(rect("R" + std::to_string(i), Rational(2 * i) * w, 0, w, h));
  auto pair_up = [&](std::size_t e0, std::size_t e1) {
    std::vector<EdgeRef> edges;
    for (int i = 0; i < n; ++i) {
      edges.push_back({static_cast<std::size_t>(i), e0});
      edges.push_back({static_cast<std::size_t>(i), e1});
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    for (std::size_t k = 0; k + 1 < edges.size(); k += 2) {
      EdgeRef a = edges[k], b = edges[k + 1];
      GluingKind kind = a.index != b.index ? GluingKind::Translation : GluingKind::Flip;
      d.gluings.push_back(Gluing{a, b, kind});
    }
  };
  pair_up(0, 2);
  pair_up(1, 3);
  return d;
}

}  // namespace fixtures
