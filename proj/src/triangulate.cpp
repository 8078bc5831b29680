#include "flatlam/triangulate.hpp"

#include <list>
#include <map>
#include <stdexcept>

namespace flatlam {

namespace {

int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return sgn(cross(b - a, c - a)); }

bool in_closed_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

}  // namespace

std::vector<std::array<std::size_t, 3>> ear_clip(const Polygon& p) {
  std::vector<std::size_t> live(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) live[i] = i;
  std::vector<std::array<std::size_t, 3>> out;
  while (live.size() > 3) {
    bool clipped = false;
    std::size_t n = live.size();
    for (std::size_t k = 0; k < n && !clipped; ++k) {
      std::size_t a = live[(k + n - 1) % n], b = live[k], c = live[(k + 1) % n];
      const Vec2 &A = p.vertex(a), &B = p.vertex(b), &C = p.vertex(c);
      if (orient(A, B, C) <= 0) continue;
      bool empty = true;
      for (std::size_t j : live) {
        if (j == a || j == b || j == c) continue;
        if (in_closed_triangle(A, B, C, p.vertex(j))) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      out.push_back({a, b, c});
      live.erase(live.begin() + static_cast<long>(k));
      clipped = true;
    }
    if (!clipped) throw std::logic_error("ear clipping failed on polygon '" + p.id + "'");
  }
  if (orient(p.vertex(live[0]), p.vertex(live[1]), p.vertex(live[2])) <= 0)
    throw std::logic_error("degenerate final ear on polygon '" + p.id + "'");
  out.push_back({live[0], live[1], live[2]});
  return out;
}

Triangulation triangulate(const SurfaceData& data,
                          const std::vector<std::vector<std::optional<EdgeMap>>>& across) {
  Triangulation t;
  t.by_polygon.resize(data.polygons.size());
  // (polygon, polygon edge) -> (triangle, triangle edge)
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> edge_owner;
  for (std::size_t p = 0; p < data.polygons.size(); ++p) {
    const Polygon& P = data.polygons[p];
    std::size_t n = P.size();
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> diag;
    for (const auto& tv : ear_clip(P)) {
      std::size_t id = t.triangles.size();
      Triangle tri;
      tri.polygon = p;
      tri.v = tv;
      for (int k = 0; k < 3; ++k) {
        std::size_t a = tv[k], b = tv[(k + 1) % 3];
        if (b == (a + 1) % n) {
          tri.polygon_edge[k] = a;
          edge_owner[{p, a}] = {id, k};
        } else {
          auto it = diag.find({b, a});
          if (it != diag.end()) {
            tri.link[k] = TriangleLink{it->second.first, it->second.second, 1, Vec2(0, 0), true};
            t.triangles[it->second.first].link[it->second.second] = TriangleLink{id, k, 1, Vec2(0, 0), true};
          } else {
            diag[{a, b}] = {id, k};
          }
        }
      }
      t.by_polygon[p].push_back(id);
      t.triangles.push_back(tri);
    }
  }
  for (auto& tri : t.triangles)
    for (int k = 0; k < 3; ++k) {
      if (!tri.polygon_edge[k]) continue;
      const auto& m = across[tri.polygon][*tri.polygon_edge[k]];
      if (!m) continue;
      auto [nt, ne] = edge_owner.at({m->to.polygon, m->to.index});
      tri.link[k] = TriangleLink{nt, ne, m->eps, m->offset, false};
    }
  return t;
}

}  // namespace flatlam
