#pragma once
// Point location inside a single polygon.

#include <cstddef>

#include "flatlam/surface.hpp"

namespace flatlam::detail {

struct Location {
  enum Kind { Outside, Interior, OnEdge, AtVertex } kind = Outside;
  std::size_t index = 0;  // edge or vertex index
};

inline int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return sgn(cross(b - a, c - a)); }

inline bool on_closed_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return orient(a, b, p) == 0 && sgn(dot(p - a, p - b)) <= 0;
}

inline Location locate(const Polygon& P, const Vec2& z) {
  for (std::size_t i = 0; i < P.size(); ++i)
    if (P.vertex(i) == z) return {Location::AtVertex, i};
  for (std::size_t i = 0; i < P.size(); ++i)
    if (on_closed_segment(P.vertex(i), P.vertex(i + 1), z)) return {Location::OnEdge, i};
  // Winding number with exact half-open crossing rule.
  int wn = 0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Vec2& a = P.vertex(i);
    const Vec2& b = P.vertex(i + 1);
    if (a.y <= z.y) {
      if (b.y > z.y && orient(a, b, z) > 0) ++wn;
    } else if (b.y <= z.y && orient(a, b, z) < 0) {
      --wn;
    }
  }
  return {wn != 0 ? Location::Interior : Location::Outside, 0};
}

}  // namespace flatlam::detail
