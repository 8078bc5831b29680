#include "flatlam/ribbon.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace flatlam {

RibbonGraph::RibbonGraph(std::vector<std::string> vertices, std::vector<RibbonEdge> edges,
                         std::vector<std::vector<std::size_t>> order)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), order_(std::move(order)) {
  std::size_t n = vertices_.size();
  if (n == 0 || edges_.empty()) throw InvalidRibbonGraph("graph needs at least one vertex and one edge");
  if (order_.size() != n) throw InvalidRibbonGraph("cyclic order missing for some vertex");
  for (const auto& e : edges_) {
    if (e.ends[0] >= n || e.ends[1] >= n) throw InvalidRibbonGraph("edge '" + e.id + "' has an unknown end");
    if (sgn(e.length) <= 0) throw InvalidRibbonGraph("edge '" + e.id + "' has non-positive length");
  }
  succ_.assign(half_edge_count(), half_edge_count());
  std::vector<int> seen(half_edge_count(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& o = order_[v];
    if (o.size() < 2) throw InvalidRibbonGraph("vertex '" + vertices_[v] + "' has valence < 2");
    for (std::size_t i = 0; i < o.size(); ++i) {
      std::size_t h = o[i];
      if (h >= half_edge_count()) throw InvalidRibbonGraph("unknown half-edge at '" + vertices_[v] + "'");
      if (vertex_of(h) != v) throw InvalidRibbonGraph("half-edge " + name(h) + " listed at the wrong vertex");
      if (seen[h]++) throw InvalidRibbonGraph("half-edge " + name(h) + " listed twice");
      succ_[h] = o[(i + 1) % o.size()];
    }
  }
  for (std::size_t h = 0; h < half_edge_count(); ++h)
    if (!seen[h]) throw InvalidRibbonGraph("half-edge " + name(h) + " missing from its vertex order");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) parent[find(e.ends[0])] = find(e.ends[1]);
  for (std::size_t v = 0; v < n; ++v)
    if (find(v) != find(0)) throw InvalidRibbonGraph("graph is not connected");
}

RibbonGraph RibbonGraph::from_names(std::vector<std::string> vertices, std::vector<RibbonEdge> edges,
                                    const std::map<std::string, std::vector<std::string>>& order) {
  std::map<std::string, std::size_t> half;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!half.emplace(edges[e].id + "+", 2 * e).second) throw InvalidRibbonGraph("duplicate edge id '" + edges[e].id + "'");
    half.emplace(edges[e].id + "-", 2 * e + 1);
  }
  std::vector<std::vector<std::size_t>> ord(vertices.size());
  for (const auto& [v, names] : order) {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw InvalidRibbonGraph("cyclic order for unknown vertex '" + v + "'");
    for (const auto& nm : names) {
      auto h = half.find(nm);
      if (h == half.end()) throw InvalidRibbonGraph("unknown half-edge '" + nm + "'");
      ord[it - vertices.begin()].push_back(h->second);
    }
  }
  return RibbonGraph(std::move(vertices), std::move(edges), std::move(ord));
}

std::vector<RightTurnCycle> right_turn_cycles(const RibbonGraph& g) {
  std::vector<RightTurnCycle> out;
  std::vector<bool> used(g.half_edge_count());
  for (std::size_t h0 = 0; h0 < g.half_edge_count(); ++h0) {
    if (used[h0]) continue;
    RightTurnCycle c;
    c.length = 0;
    for (std::size_t h = h0; !used[h]; h = g.successor(RibbonGraph::opposite(h))) {
      used[h] = true;
      c.half_edges.push_back(h);
      c.length += g.length(h);
    }
    out.push_back(std::move(c));
  }
  return out;
}

SurfaceData build_surface_data(const RibbonGraph& g) {
  SurfaceData d;
  std::vector<std::optional<EdgeRef>> slot(g.half_edge_count());
  Rational x0 = 0;
  for (const auto& c : right_turn_cycles(g)) {
    Polygon P;
    P.id = "cyl" + std::to_string(d.polygons.size());
    std::size_t p = d.polygons.size();
    Rational x = x0;
    for (std::size_t i = 0; i < c.half_edges.size(); ++i) {
      P.vertices.push_back(Vec2(x, 0));
      slot[c.half_edges[i]] = EdgeRef{p, i};
      x += g.length(c.half_edges[i]);
    }
    std::size_t m = c.half_edges.size();
    P.vertices.push_back(Vec2(x, 0));
    P.vertices.push_back(Vec2(x, 1));
    P.vertices.push_back(Vec2(x0, 1));
    // Edges m (right side) and m + 2 (left side) close the cylinder.
    d.gluings.push_back(Gluing{EdgeRef{p, m}, EdgeRef{p, m + 2}, GluingKind::Translation});
    d.polygons.push_back(std::move(P));
    x0 = x + 1;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    d.gluings.push_back(Gluing{*slot[2 * e], *slot[2 * e + 1], GluingKind::Flip});
  return d;
}

HalfTranslationSurface build_surface(const RibbonGraph& g) { return HalfTranslationSurface(build_surface_data(g)); }

SurfaceInvariants surface_invariants(const RibbonGraph& g) {
  SurfaceInvariants r;
  r.chi = static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count());
  r.boundary = static_cast<long>(right_turn_cycles(g).size());
  long twice = 2 - r.chi - r.boundary;
  if (twice < 0 || twice % 2) throw NonIntegralGenus("2 - chi - b = " + std::to_string(twice));
  r.genus = twice / 2;
  return r;
}

const char* to_string(ExceptionalKind k) {
  switch (k) {
    case ExceptionalKind::None: return "None";
    case ExceptionalKind::Circle: return "Circle";
    case ExceptionalKind::Dumbbell: return "Dumbbell";
    case ExceptionalKind::FlatEight: return "FlatEight";
    case ExceptionalKind::FlatTheta: return "FlatTheta";
  }
  return "?";
}

namespace {

// Bare combinatorics: opposite is h ^ 1, succ the cyclic successor.
struct Combinatorial {
  std::vector<std::size_t> succ;
  std::vector<std::size_t> vertex;
};

Combinatorial combinatorial(const RibbonGraph& g) {
  Combinatorial c;
  for (std::size_t h = 0; h < g.half_edge_count(); ++h) {
    c.succ.push_back(g.successor(h));
    c.vertex.push_back(g.vertex_of(h));
  }
  return c;
}

std::size_t valence(const Combinatorial& c, std::size_t h) {
  std::size_t n = 1;
  for (std::size_t k = c.succ[h]; k != h; k = c.succ[k]) ++n;
  return n;
}

// Removes valence-2 vertices by merging their two edges. Stops at a lone
// vertex carrying a loop.
Combinatorial normalize(Combinatorial c) {
  while (true) {
    std::optional<std::size_t> pick;
    for (std::size_t h = 0; h < c.succ.size() && !pick; ++h)
      if (valence(c, h) == 2 && c.succ[h] != (h ^ 1)) pick = h;
    if (!pick) return c;
    // Vertex with half-edges h, k. Edge (a, h) and (k, b) become (a, b).
    std::size_t h = *pick, k = c.succ[h];
    std::size_t a = h ^ 1, b = k ^ 1;
    std::size_t n = c.succ.size();
    // New numbering: drop edges of h and k, append edge {a, b}.
    std::vector<std::size_t> remap(n, n);
    std::size_t next = 0;
    for (std::size_t e = 0; e < n / 2; ++e) {
      if (e == h / 2 || e == k / 2) continue;
      remap[2 * e] = next++;
      remap[2 * e + 1] = next++;
    }
    remap[a] = next;
    remap[b] = next + 1;
    Combinatorial out;
    out.succ.assign(n - 2, 0);
    out.vertex.assign(n - 2, 0);
    for (std::size_t x = 0; x < n; ++x) {
      if (remap[x] == n) continue;
      out.succ[remap[x]] = remap[c.succ[x]];
      out.vertex[remap[x]] = c.vertex[x];
    }
    c = std::move(out);
  }
}

Combinatorial make(std::vector<std::vector<std::size_t>> order, std::size_t halves) {
  Combinatorial c;
  c.succ.assign(halves, 0);
  c.vertex.assign(halves, 0);
  for (std::size_t v = 0; v < order.size(); ++v)
    for (std::size_t i = 0; i < order[v].size(); ++i) {
      c.succ[order[v][i]] = order[v][(i + 1) % order[v].size()];
      c.vertex[order[v][i]] = v;
    }
  return c;
}

Combinatorial mirror(const Combinatorial& c) {
  Combinatorial m = c;
  for (std::size_t h = 0; h < c.succ.size(); ++h) m.succ[c.succ[h]] = h;
  return m;
}

bool isomorphic(const Combinatorial& a, const Combinatorial& b) {
  std::size_t n = a.succ.size();
  if (n != b.succ.size()) return false;
  for (std::size_t image = 0; image < n; ++image) {
    std::vector<std::size_t> phi(n, n), inv(n, n);
    std::vector<std::size_t> stack{0};
    phi[0] = image;
    inv[image] = 0;
    bool ok = true;
    auto assign = [&](std::size_t x, std::size_t y) {
      if (phi[x] == n && inv[y] == n) {
        phi[x] = y;
        inv[y] = x;
        stack.push_back(x);
      } else if (phi[x] != y || inv[y] != x) {
        ok = false;
      }
    };
    while (ok && !stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      assign(x ^ 1, phi[x] ^ 1);
      if (ok) assign(a.succ[x], b.succ[phi[x]]);
    }
    if (ok && std::find(phi.begin(), phi.end(), n) == phi.end()) return true;
  }
  return false;
}

// Half-edges: edge a = {0, 1}, b = {2, 3}, c = {4, 5}.
const std::vector<std::pair<ExceptionalKind, Combinatorial>>& references() {
  static const std::vector<std::pair<ExceptionalKind, Combinatorial>> refs = {
      {ExceptionalKind::Circle, make({{0, 1}}, 2)},
      {ExceptionalKind::Dumbbell, make({{0, 1, 4}, {2, 3, 5}}, 6)},
      {ExceptionalKind::FlatEight, make({{0, 1, 2, 3}}, 4)},
      {ExceptionalKind::FlatTheta, make({{0, 2, 4}, {5, 3, 1}}, 6)},
  };
  return refs;
}

}  // namespace

ExceptionalKind is_exceptional(const RibbonGraph& g) {
  Combinatorial c = normalize(combinatorial(g));
  ExceptionalKind kind = ExceptionalKind::None;
  for (const auto& [k, ref] : references())
    if (isomorphic(c, ref) || isomorphic(c, mirror(ref))) {
      kind = k;
      break;
    }
  HalfTranslationSurface s = build_surface(g);
  long chi = s.euler_characteristic(), b = s.boundary_components(), genus = s.genus();
  bool derived = chi == 0 || (chi == -1 && b == 3 && genus == 0);
  if (derived != (kind != ExceptionalKind::None))
    throw CrossCheckMismatch(std::string("isomorphism test says ") + to_string(kind) + " but the built surface has chi=" +
                             std::to_string(chi) + ", b=" + std::to_string(b) + ", g=" + std::to_string(genus));
  return kind;
}

bool bouquet_bound(long genus, long boundary, long n) { return n <= 6 * genus + 3 * boundary - 3; }
bool arc_bound(long genus, long boundary, long n) { return n <= 6 * genus + 3 * boundary - 2; }

}  // namespace flatlam
