#include "flatlam/flow.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "flatlam/triangulate.hpp"
#include "locate.hpp"

namespace flatlam {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Periodic: return "Periodic";
    case Outcome::Mixed: return "Mixed";
    case Outcome::Undetermined: return "Undetermined";
  }
  return "?";
}

std::optional<Rational> Cylinder::height() const {
  mpz_class n = height_sq.get_num(), d = height_sq.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn = sqrt(n), rd = sqrt(d);
  Rational h(rn, rd);
  h.canonicalize();
  return h;
}

namespace {

bool same_connection(const SaddleConnection& a, const SaddleConnection& b) {
  return a.from == b.from && a.holonomy == b.holonomy;
}

bool same_connections(const std::vector<SaddleConnection>& a, const std::vector<SaddleConnection>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), same_connection);
}

}  // namespace

bool same_cylinder(const Cylinder& a, const Cylinder& b) {
  return Direction(a.circumference) == Direction(b.circumference) && a.circumference_sq == b.circumference_sq &&
         a.height_sq == b.height_sq && a.area == b.area && same_connections(a.top, b.top) &&
         same_connections(a.bottom, b.bottom) && a.top_edges == b.top_edges && a.bottom_edges == b.bottom_edges;
}

SeparatrixDiagram separatrix_diagram(const HalfTranslationSurface& s, const Direction& d,
                                     const Rational& max_sq_length) {
  SeparatrixDiagram diag;
  diag.direction = d;
  const Vec2& dv = d.vec();
  std::set<Germ> germs;
  for (const auto& cp : s.vertex_classes()) {
    if (!cp.singular()) continue;
    for (const auto& k : cp.corners)
      for (const Vec2& v : {dv, -dv})
        if (in_arc_closed(k.u, k.w, v)) germs.insert(s.make_germ(k.ref, v));
  }
  std::map<std::pair<Germ, Vec2>, std::size_t> index;
  for (const Germ& g : germs) {
    Trajectory t = shoot(s, g, max_sq_length);
    switch (t.termination) {
      case Termination::HitSingularity: {
        SaddleConnection sc = canonical_connection(s, t);
        if (index.emplace(std::make_pair(sc.from, sc.holonomy), 0).second) diag.closed.push_back(sc);
        break;
      }
      case Termination::HitBoundary: {
        bool tangential = t.segments.empty() && t.boundary_edge &&
                          parallel(s.polygon(t.boundary_edge->polygon).edge(t.boundary_edge->index), dv);
        if (!tangential) diag.to_boundary.push_back(Separatrix{g, t});
        break;
      }
      case Termination::LengthBudget:
      case Termination::Closed:
        diag.open_rays.push_back(OpenRay{g, t.sq_length()});
        break;
    }
    diag.separatrices.push_back(Separatrix{g, std::move(t)});
  }
  std::sort(diag.closed.begin(), diag.closed.end(), [](const SaddleConnection& a, const SaddleConnection& b) {
    if (a.sq_length != b.sq_length) return a.sq_length < b.sq_length;
    if (a.itinerary != b.itinerary) return a.itinerary < b.itinerary;
    if (!(a.from == b.from)) return a.from < b.from;
    return a.holonomy < b.holonomy;
  });
  return diag;
}

namespace {

// What a cut segment belongs to.
struct Label {
  enum Kind { Saddle, ToBoundary, Open } kind = Saddle;
  std::size_t index = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
};

struct CutSeg {
  Rational x0, x1;
  Label label;
};

struct Piece {
  std::size_t tri = 0;
  Rational y0, y1;
};

struct Component {
  std::vector<std::size_t> pieces;
  bool parity_conflict = false;
};

// Slab subdivision of the surface for the flow in direction d: Y(z) =
// cross(d, z) is the transverse coordinate, X(z) = dot(d, z) the one along
// the flow.
class Slabs {
 public:
  Slabs(const HalfTranslationSurface& s, const Vec2& d, const SeparatrixDiagram& diag)
      : s_(s), tri_(s.triangulation()), d_(d), cuts_(s.polygons().size()) {
    add_cuts(diag);
    build_pieces();
    connect();
  }

  Rational Y(const Vec2& z) const { return cross(d_, z); }
  Rational X(const Vec2& z) const { return dot(d_, z); }

  const std::vector<Piece>& pieces() const { return pieces_; }
  const Triangle& triangle(std::size_t t) const { return tri_.triangles[t]; }

  std::vector<Component> components() {
    std::map<std::size_t, std::size_t> root_index;
    std::vector<Component> out;
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
      auto [r, par] = find(p);
      (void)par;
      auto [it, fresh] = root_index.emplace(r, out.size());
      if (fresh) out.emplace_back();
      out[it->second].pieces.push_back(p);
    }
    for (std::size_t r : conflicts_) out[root_index.at(find(r).first)].parity_conflict = true;
    return out;
  }

  int parity(std::size_t p) { return find(p).second; }

  Vec2 vertex(std::size_t t, int k) const {
    const Triangle& T = tri_.triangles[t];
    return s_.polygon(T.polygon).vertex(T.v[k]);
  }

  // Endpoints of the chord Y = y across triangle t (sorted by X); nullopt when
  // the level only touches a vertex.
  std::optional<std::pair<Vec2, Vec2>> chord(std::size_t t, const Rational& y) const {
    std::vector<Vec2> pts;
    for (int k = 0; k < 3; ++k) {
      Vec2 a = vertex(t, k), b = vertex(t, (k + 1) % 3);
      Rational ya = Y(a), yb = Y(b);
      if (ya == yb) {
        if (ya == y) {
          pts.push_back(a);
          pts.push_back(b);
        }
        continue;
      }
      if ((y - ya) * (y - yb) > 0) continue;
      pts.push_back(a + ((y - ya) / (yb - ya)) * (b - a));
    }
    if (pts.empty()) return std::nullopt;
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [&](const Vec2& p, const Vec2& q) { return X(p) < X(q); });
    if (X(*lo) == X(*hi)) return std::nullopt;
    return std::make_pair(*lo, *hi);
  }

  Vec2 mid_point(std::size_t piece) const {
    const Piece& p = pieces_[piece];
    auto c = chord(p.tri, (p.y0 + p.y1) / 2);
    return Rational(1, 2) * (c->first + c->second);
  }

  std::vector<Vec2> region(std::size_t piece) const {
    const Piece& p = pieces_[piece];
    std::vector<Vec2> poly{vertex(p.tri, 0), vertex(p.tri, 1), vertex(p.tri, 2)};
    poly = clip(poly, p.y0, true);
    return clip(poly, p.y1, false);
  }

  Rational area(std::size_t piece) const {
    std::vector<Vec2> poly = region(piece);
    Rational a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
    return a / 2;
  }

  // Labels of cuts covering the chord of `piece` at its top (or bottom) level,
  // and the surface-boundary edge lying there if any.
  std::vector<Label> covering(std::size_t piece, bool top) const {
    const Piece& p = pieces_[piece];
    Rational y = top ? p.y1 : p.y0;
    auto c = chord(p.tri, y);
    if (!c) return {};
    return covered(tri_.triangles[p.tri].polygon, y, Rational(1, 2) * (c->first + c->second));
  }

  std::optional<EdgeRef> boundary_edge(std::size_t piece, bool top) const {
    const Piece& p = pieces_[piece];
    Rational y = top ? p.y1 : p.y0;
    const Triangle& T = tri_.triangles[p.tri];
    for (int k = 0; k < 3; ++k) {
      if (T.link[k] || !T.polygon_edge[k]) continue;
      if (Y(vertex(p.tri, k)) == y && Y(vertex(p.tri, (k + 1) % 3)) == y) return EdgeRef{T.polygon, *T.polygon_edge[k]};
    }
    return std::nullopt;
  }

  // Piece of the triangulation whose closure contains z (polygon coordinates).
  std::optional<std::size_t> piece_at(std::size_t polygon, const Vec2& z) const {
    for (std::size_t t : tri_.by_polygon[polygon]) {
      Vec2 a = vertex(t, 0), b = vertex(t, 1), c = vertex(t, 2);
      if (detail::orient(a, b, z) < 0 || detail::orient(b, c, z) < 0 || detail::orient(c, a, z) < 0) continue;
      Rational y = Y(z);
      for (std::size_t p : by_tri_[t])
        if (pieces_[p].y0 <= y && y <= pieces_[p].y1) return p;
    }
    return std::nullopt;
  }

 private:
  void add_cut(std::size_t polygon, const Vec2& a, const Vec2& b, Label label) {
    Rational x0 = X(a), x1 = X(b);
    if (x1 < x0) std::swap(x0, x1);
    cuts_[polygon][Y(a)].push_back(CutSeg{x0, x1, label});
  }

  void add_trajectory(const Trajectory& t, Label label) {
    for (const auto& seg : t.segments) {
      add_cut(seg.polygon, seg.from, seg.to, label);
      const Polygon& P = s_.polygon(seg.polygon);
      for (std::size_t j = 0; j < P.size(); ++j) {
        if (!detail::on_closed_segment(P.vertex(j), P.vertex(j + 1), seg.from) ||
            !detail::on_closed_segment(P.vertex(j), P.vertex(j + 1), seg.to))
          continue;
        if (const auto& m = s_.across(EdgeRef{seg.polygon, j})) add_cut(m->to.polygon, m->apply(seg.from), m->apply(seg.to), label);
      }
    }
  }

  void add_cuts(const SeparatrixDiagram& diag) {
    std::map<std::pair<Germ, Vec2>, std::size_t> sc_index;
    for (std::size_t i = 0; i < diag.closed.size(); ++i) sc_index[{diag.closed[i].from, diag.closed[i].holonomy}] = i;
    std::size_t open = 0, bd = 0;
    for (const auto& sep : diag.separatrices) {
      const Trajectory& t = sep.trajectory;
      switch (t.termination) {
        case Termination::HitSingularity: {
          SaddleConnection sc = canonical_connection(s_, t);
          add_trajectory(t, Label{Label::Saddle, sc_index.at({sc.from, sc.holonomy})});
          break;
        }
        case Termination::HitBoundary:
          if (bd < diag.to_boundary.size() && diag.to_boundary[bd].germ == sep.germ)
            add_trajectory(t, Label{Label::ToBoundary, bd++});
          break;
        default:
          add_trajectory(t, Label{Label::Open, open++});
          break;
      }
    }
  }

  std::vector<Label> covered(std::size_t polygon, const Rational& y, const Vec2& z) const {
    std::vector<Label> out;
    auto it = cuts_[polygon].find(y);
    if (it == cuts_[polygon].end()) return out;
    Rational x = X(z);
    for (const auto& c : it->second)
      if (c.x0 <= x && x <= c.x1) out.push_back(c.label);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void build_pieces() {
    by_tri_.resize(tri_.triangles.size());
    for (std::size_t p = 0; p < s_.polygons().size(); ++p) {
      std::set<Rational> levels;
      const Polygon& P = s_.polygon(p);
      for (const auto& v : P.vertices) levels.insert(Y(v));
      for (const auto& [y, segs] : cuts_[p]) levels.insert(y);
      for (std::size_t t : tri_.by_polygon[p]) {
        Rational ys[3] = {Y(vertex(t, 0)), Y(vertex(t, 1)), Y(vertex(t, 2))};
        Rational lo = std::min({ys[0], ys[1], ys[2]}), hi = std::max({ys[0], ys[1], ys[2]});
        auto it = levels.lower_bound(lo);
        while (true) {
          auto next = std::next(it);
          if (next == levels.end() || *it >= hi) break;
          by_tri_[t].push_back(pieces_.size());
          pieces_.push_back(Piece{t, *it, *next});
          it = next;
        }
      }
    }
    parent_.resize(pieces_.size());
    std::iota(parent_.begin(), parent_.end(), 0);
    rel_.assign(pieces_.size(), 0);
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    if (parent_[x] == x) return {x, 0};
    auto [r, p] = find(parent_[x]);
    parent_[x] = r;
    rel_[x] ^= p;
    return {r, rel_[x]};
  }

  void unite(std::size_t a, std::size_t b, int flip) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb) != flip) conflicts_.push_back(ra);
      return;
    }
    parent_[ra] = rb;
    rel_[ra] = pa ^ pb ^ flip;
  }

  void connect() {
    for (std::size_t t = 0; t < tri_.triangles.size(); ++t) {
      const Triangle& T = tri_.triangles[t];
      const auto& ps = by_tri_[t];
      for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        const Rational& y = pieces_[ps[i]].y1;
        auto c = chord(t, y);
        if (c && covered(T.polygon, y, Rational(1, 2) * (c->first + c->second)).empty()) unite(ps[i], ps[i + 1], 0);
      }
      for (int k = 0; k < 3; ++k) {
        const auto& link = T.link[k];
        if (!link) continue;
        Vec2 a = vertex(t, k), b = vertex(t, (k + 1) % 3);
        Rational ya = Y(a), yb = Y(b);
        Rational shift = Y(link->offset);
        int flip = link->eps < 0 ? 1 : 0;
        auto map = [&](const Rational& y) -> Rational { return link->eps * y + shift; };
        const auto& qs = by_tri_[link->tri];
        if (ya == yb) {
          if (!covered(T.polygon, ya, Rational(1, 2) * (a + b)).empty()) continue;
          Rational y2 = map(ya);
          for (std::size_t p : ps)
            if (pieces_[p].y0 == ya || pieces_[p].y1 == ya)
              for (std::size_t q : qs)
                if (pieces_[q].y0 == y2 || pieces_[q].y1 == y2) unite(p, q, flip);
          continue;
        }
        Rational lo = std::min(ya, yb), hi = std::max(ya, yb);
        for (std::size_t p : ps) {
          if (pieces_[p].y0 < lo || pieces_[p].y1 > hi) continue;
          Rational m0 = map(pieces_[p].y0), m1 = map(pieces_[p].y1);
          if (m1 < m0) std::swap(m0, m1);
          for (std::size_t q : qs)
            if (std::max(m0, pieces_[q].y0) < std::min(m1, pieces_[q].y1)) unite(p, q, flip);
        }
      }
    }
  }

  std::vector<Vec2> clip(const std::vector<Vec2>& poly, const Rational& y, bool keep_above) const {
    std::vector<Vec2> out;
    auto inside = [&](const Vec2& z) { return keep_above ? Y(z) >= y : Y(z) <= y; };
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2& a = poly[i];
      const Vec2& b = poly[(i + 1) % poly.size()];
      bool ia = inside(a), ib = inside(b);
      if (ia) out.push_back(a);
      if (ia != ib) out.push_back(a + ((y - Y(a)) / (Y(b) - Y(a))) * (b - a));
    }
    return out;
  }

  const HalfTranslationSurface& s_;
  const Triangulation& tri_;
  Vec2 d_;
  std::vector<std::map<Rational, std::vector<CutSeg>>> cuts_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<std::size_t>> by_tri_;
  std::vector<std::size_t> parent_;
  std::vector<int> rel_;
  std::vector<std::size_t> conflicts_;
};

struct Analysis {
  bool cylinder = false;
  Cylinder cyl;
  CandidateDomain domain;
};

Analysis analyse(const HalfTranslationSurface& s, const Vec2& d, const SeparatrixDiagram& diag, Slabs& slabs,
                 const Component& comp, const Rational& leaf_budget) {
  Analysis out;
  Rational area = 0;
  for (std::size_t p : comp.pieces) area += slabs.area(p);
  std::set<Label> top, bottom;
  std::set<EdgeRef> top_edges, bottom_edges;
  std::vector<std::size_t> saddle_multi, open;
  for (std::size_t p : comp.pieces) {
    int par = slabs.parity(p);
    for (bool up : {true, false}) {
      bool is_top = up != (par == 1);
      for (const Label& l : slabs.covering(p, up)) {
        (is_top ? top : bottom).insert(l);
        if (l.kind == Label::Saddle) saddle_multi.push_back(l.index);
        if (l.kind == Label::Open) open.push_back(l.index);
      }
      if (auto e = slabs.boundary_edge(p, up)) (is_top ? top_edges : bottom_edges).insert(*e);
    }
  }
  out.domain.area = area;
  out.domain.boundary_edges.assign(top_edges.begin(), top_edges.end());
  out.domain.boundary_edges.insert(out.domain.boundary_edges.end(), bottom_edges.begin(), bottom_edges.end());
  std::sort(out.domain.boundary_edges.begin(), out.domain.boundary_edges.end());
  std::sort(saddle_multi.begin(), saddle_multi.end());
  out.domain.boundary_saddles = saddle_multi;
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  out.domain.open_rays = open;
  if (comp.parity_conflict) return out;

  std::optional<Trajectory> core;
  for (std::size_t p : comp.pieces) {
    const Piece& pc = slabs.pieces()[p];
    Trajectory t = shoot(s, SurfacePoint{slabs.triangle(pc.tri).polygon, slabs.mid_point(p)}, d, leaf_budget);
    if (t.termination != Termination::Closed) return out;
    if (core && t.sq_length() != core->sq_length()) return out;
    if (!core) core = std::move(t);
  }
  for (const Label& l : top)
    if (l.kind != Label::Saddle) return out;
  for (const Label& l : bottom)
    if (l.kind != Label::Saddle) return out;

  Cylinder& c = out.cyl;
  c.circumference = core->parameter * d;
  c.circumference_sq = core->sq_length();
  c.area = area;
  c.height_sq = area * area / c.circumference_sq;
  for (const Label& l : top) c.top.push_back(diag.closed[l.index]);
  for (const Label& l : bottom) c.bottom.push_back(diag.closed[l.index]);
  c.top_edges.assign(top_edges.begin(), top_edges.end());
  c.bottom_edges.assign(bottom_edges.begin(), bottom_edges.end());
  c.core_curve = std::move(*core);
  for (std::size_t p : comp.pieces)
    c.regions.push_back(Region{slabs.triangle(slabs.pieces()[p].tri).polygon, slabs.region(p)});
  out.cylinder = true;
  return out;
}

Rational leaf_budget_for(const HalfTranslationSurface& s, const SeparatrixDiagram& diag, const Rational& budget) {
  if (s.singularity_count() == 0) return budget;
  Rational longest = budget;
  long edges = 0;
  for (std::size_t p = 0; p < s.polygons().size(); ++p)
    for (std::size_t i = 0; i < s.polygon(p).size(); ++i)
      if (s.is_boundary(EdgeRef{p, i})) {
        ++edges;
        longest = std::max(longest, norm2(s.polygon(p).edge(i)));
      }
  Rational n = static_cast<long>(diag.closed.size()) + edges + 1;
  return n * n * longest;
}

}  // namespace

DirectionClassification cylinder_decomposition(const HalfTranslationSurface& s, const Direction& d,
                                               const Rational& max_sq_length) {
  DirectionClassification out;
  out.direction = d;
  out.budget = max_sq_length;
  out.diagram = separatrix_diagram(s, d, max_sq_length);
  const Vec2& dv = d.vec();
  Slabs slabs(s, dv, out.diagram);
  Rational leaf_budget = leaf_budget_for(s, out.diagram, max_sq_length);
  bool all_cylinders = true;
  bool touches_boundary = !out.diagram.to_boundary.empty();
  for (const Component& comp : slabs.components()) {
    Analysis a = analyse(s, dv, out.diagram, slabs, comp, leaf_budget);
    if (a.cylinder) {
      out.cylinders.push_back(std::move(a.cyl));
    } else {
      all_cylinders = false;
      if (!a.domain.boundary_edges.empty()) touches_boundary = true;
      out.domains.push_back(std::move(a.domain));
    }
  }
  std::stable_sort(out.cylinders.begin(), out.cylinders.end(), [](const Cylinder& a, const Cylinder& b) {
    if (a.circumference_sq != b.circumference_sq) return a.circumference_sq < b.circumference_sq;
    return a.area < b.area;
  });
  bool all_closed = out.diagram.open_rays.empty();
  if (all_closed && all_cylinders) {
    Rational total = 0;
    for (const auto& c : out.cylinders) total += c.area;
    if (total != s.area())
      throw InternalDecompositionError("cylinder areas sum to " + to_string(total) + ", surface area is " +
                                       to_string(s.area()));
    out.outcome = Outcome::Periodic;
    return out;
  }
  if (all_closed && !touches_boundary && s.singularity_count() > 0)
    throw InternalDecompositionError("all separatrices closed but a complementary component is not a cylinder");
  bool any_closed = !out.diagram.closed.empty() || !out.diagram.to_boundary.empty();
  out.outcome = (any_closed || !out.cylinders.empty()) ? Outcome::Mixed : Outcome::Undetermined;
  return out;
}

Cylinder maximal_cylinder(const HalfTranslationSurface& s, const Trajectory& periodic) {
  if (periodic.termination == Termination::HitSingularity)
    throw PassesThroughSingularity("trajectory runs into a singularity");
  if (periodic.termination != Termination::Closed) throw NotPeriodic("trajectory is not closed");
  Direction d(periodic.dir);
  Rational c2 = periodic.sq_length();
  SeparatrixDiagram diag = separatrix_diagram(s, d, c2);
  Slabs slabs(s, d.vec(), diag);
  SurfacePoint start = periodic.segments.empty() ? periodic.start
                                                 : SurfacePoint{periodic.segments[0].polygon, periodic.segments[0].from};
  auto piece = slabs.piece_at(start.polygon, start.coords);
  if (!piece) throw InternalDecompositionError("start point of the periodic trajectory not found in the slab subdivision");
  for (const Component& comp : slabs.components()) {
    if (std::find(comp.pieces.begin(), comp.pieces.end(), *piece) == comp.pieces.end()) continue;
    Analysis a = analyse(s, d.vec(), diag, slabs, comp, c2);
    if (!a.cylinder || a.cyl.circumference_sq != c2)
      throw InternalDecompositionError("component of a periodic trajectory failed the cylinder check");
    return a.cyl;
  }
  throw InternalDecompositionError("no component contains the periodic trajectory");
}

std::optional<Direction> constant_direction_tail(const HalfTranslationSurface&, const Trajectory& t) {
  if (t.segments.empty()) return std::nullopt;
  return Direction(t.dir);
}

std::optional<Direction> constant_direction_tail(const HalfTranslationSurface&, const GeodesicPath& p) {
  if (p.legs.empty()) return std::nullopt;
  return Direction(p.legs.back().holonomy);
}

}  // namespace flatlam
