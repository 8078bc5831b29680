#pragma once
// Exact ear-clipping triangulation of the polygon complex, used by the
// unfolding search and the slab decomposition.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "flatlam/surface.hpp"

namespace flatlam {

struct TriangleLink {
  std::size_t tri = 0;
  int edge = 0;
  int eps = 1;  // point map z -> eps*z + offset into the neighbour's polygon
  Vec2 offset;
  bool diagonal = false;
};

struct Triangle {
  std::size_t polygon = 0;
  std::array<std::size_t, 3> v{};  // polygon vertex indices, ccw
  /// Edge k runs from v[k] to v[k+1]. Empty link means surface boundary.
  std::array<std::optional<TriangleLink>, 3> link;
  /// Polygon edge index when triangle edge k lies on the polygon boundary.
  std::array<std::optional<std::size_t>, 3> polygon_edge;
};

struct Triangulation {
  std::vector<Triangle> triangles;
  std::vector<std::vector<std::size_t>> by_polygon;
};

/// Ear clipping on a simple ccw polygon; collinear vertices allowed.
std::vector<std::array<std::size_t, 3>> ear_clip(const Polygon& p);

Triangulation triangulate(const SurfaceData& data,
                          const std::vector<std::vector<std::optional<EdgeMap>>>& across);

}  // namespace flatlam
