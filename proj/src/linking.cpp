#include "flatlam/linking.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "locate.hpp"

namespace flatlam {

int germ_cyclic_order(const HalfTranslationSurface& s, const Germ& a, const Germ& b, const Germ& c) {
  if (a.cone != b.cone || b.cone != c.cone) throw GermsAtDifferentCones("germs lie at different cone points");
  LinkAngle pa = s.position(a), pb = s.position(b), pc = s.position(c);
  int ab = compare(pa, pb), bc = compare(pb, pc), ca = compare(pc, pa);
  if (ab == 0 || bc == 0 || ca == 0) return 0;
  // Counterclockwise iff exactly two of the three consecutive pairs ascend.
  return (ab < 0) + (bc < 0) + (ca < 0) == 2 ? 1 : -1;
}

namespace {

Rational along(const Vec2& h, const Vec2& dir) { return dot(h, dir) / norm2(dir); }

Vec2 reverse_leg_holonomy(const Vec2& h, const Germ& to) { return (norm2(h) / abs(dot(h, to.dir))) * to.dir; }

GeodesicLeg make_leg(const HalfTranslationSurface& s, const Germ& from, const Vec2& holonomy) {
  Leg l = trace_leg(s, from, holonomy);
  return GeodesicLeg{from, l.end, holonomy, std::move(l.trajectory)};
}

bool lex_less(const std::vector<GeodesicLeg>& legs, std::size_t a, std::size_t b) {
  std::size_t n = legs.size();
  for (std::size_t k = 0; k < n; ++k) {
    const GeodesicLeg& x = legs[(a + k) % n];
    const GeodesicLeg& y = legs[(b + k) % n];
    if (!(x.from == y.from)) return x.from < y.from;
    if (!(x.holonomy == y.holonomy)) return x.holonomy < y.holonomy;
  }
  return false;
}

}  // namespace

ClosedGeodesic ClosedGeodesic::from_trajectory(const HalfTranslationSurface& s, const Trajectory& t) {
  if (t.termination != Termination::Closed) throw std::invalid_argument("trajectory is not closed");
  ClosedGeodesic g;
  g.s_ = &s;
  g.regular_ = t;
  if (t.segments.size() < 2) return g;
  // Entry points on polygon edges; the start counts when it is one, so a
  // restarted trajectory normalizes to itself.
  auto on_edge = [&](const Segment& seg) {
    const Polygon& P = s.polygon(seg.polygon);
    for (std::size_t i = 0; i < P.size(); ++i) {
      Vec2 a = P.vertex(i), e = P.edge(i);
      if (sgn(cross(e, seg.from - a)) == 0 && sgn(dot(e, seg.from - a)) >= 0 && dot(e, seg.from - a) <= norm2(e))
        return true;
    }
    return false;
  };
  std::optional<std::tuple<std::size_t, Vec2, int>> best;
  for (std::size_t k = 0; k < t.segments.size(); ++k) {
    const Segment& seg = t.segments[k];
    if (k == 0 && !on_edge(seg)) continue;
    auto cand = std::make_tuple(seg.polygon, seg.from, seg.sign);
    if (!best || std::tie(seg.polygon, seg.from) < std::tie(std::get<0>(*best), std::get<1>(*best))) best = cand;
  }
  auto [poly, z, sign] = *best;
  Trajectory r = shoot(s, SurfacePoint{poly, z}, sign * t.dir, t.sq_length());
  if (r.termination != Termination::Closed) throw std::logic_error("restarted closed trajectory did not close");
  g.regular_ = std::move(r);
  return g;
}

ClosedGeodesic ClosedGeodesic::from_legs(const HalfTranslationSurface& s, std::vector<GeodesicLeg> legs) {
  // Merge legs across regular breakpoints.
  bool merged = true;
  while (merged && legs.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i < legs.size(); ++i) {
      std::size_t j = (i + 1) % legs.size();
      if (s.vertex_class(legs[j].from.cone).singular()) continue;
      const GeodesicLeg& a = legs[i];
      const GeodesicLeg& b = legs[j];
      Rational lambda = along(a.holonomy, a.from.dir) + along(b.holonomy, b.from.dir);
      GeodesicLeg m = make_leg(s, a.from, lambda * a.from.dir);
      legs[i] = std::move(m);
      legs.erase(legs.begin() + static_cast<long>(j));
      merged = true;
      break;
    }
  }
  ClosedGeodesic g;
  g.s_ = &s;
  if (legs.size() == 1 && !s.vertex_class(legs[0].from.cone).singular()) {
    Rational lambda = along(legs[0].holonomy, legs[0].from.dir);
    Trajectory t = shoot(s, legs[0].from, lambda * lambda * norm2(legs[0].from.dir));
    return from_trajectory(s, t);
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < legs.size(); ++k)
    if (lex_less(legs, k, best)) best = k;
  std::rotate(legs.begin(), legs.begin() + static_cast<long>(best), legs.end());
  g.legs_ = std::move(legs);
  return g;
}

ClosedGeodesic ClosedGeodesic::from_path(const HalfTranslationSurface& s, const GeodesicPath& p) {
  if (!p.closed) throw MalformedPath("path is not closed");
  if (!is_local_geodesic(s, p)) throw MalformedPath("path is not a local geodesic");
  std::vector<GeodesicLeg> legs;
  for (const auto& leg : p.legs) {
    const Corner& c = s.corner(leg.from.cone, leg.from.corner);
    Germ g = s.make_germ(c.ref, leg.from.dir);
    legs.push_back(make_leg(s, g, (c.sign * s.corner(g.cone, g.corner).sign) * leg.holonomy));
  }
  return from_legs(s, std::move(legs));
}

GeodesicPath ClosedGeodesic::path() const {
  GeodesicPath p;
  p.closed = true;
  for (const auto& l : legs_) p.legs.push_back(PathLeg{l.from, l.holonomy});
  return p;
}

ClosedGeodesic ClosedGeodesic::reversed() const {
  if (!singular()) {
    const Segment& first = regular_.segments.front();
    Trajectory r = shoot(*s_, SurfacePoint{first.polygon, first.from}, -(first.sign * regular_.dir), regular_.sq_length());
    return from_trajectory(*s_, r);
  }
  std::vector<GeodesicLeg> legs;
  for (auto it = legs_.rbegin(); it != legs_.rend(); ++it)
    legs.push_back(make_leg(*s_, it->to, reverse_leg_holonomy(it->holonomy, it->to)));
  return from_legs(*s_, std::move(legs));
}

bool IntersectionPattern::linked() const {
  return std::any_of(events.begin(), events.end(), [](const IntersectionEvent& e) { return e.linked; });
}

namespace {

struct Piece {
  std::size_t polygon;
  Vec2 a, b;
  Rational t0, t1;
};

std::vector<Piece> pieces(const ClosedGeodesic& c) {
  std::vector<Piece> out;
  auto add = [&](const Trajectory& t, const Rational& base) {
    Rational T = base;
    for (const auto& seg : t.segments) {
      Rational dt = along(seg.to - seg.from, seg.sign * t.dir);
      out.push_back(Piece{seg.polygon, seg.from, seg.to, T, T + dt});
      T += dt;
    }
  };
  if (c.singular())
    for (std::size_t i = 0; i < c.legs().size(); ++i) add(c.legs()[i].trace, Rational(static_cast<long>(i)));
  else
    add(c.trajectory(), 0);
  return out;
}

Rational period(const ClosedGeodesic& c) {
  return c.singular() ? Rational(static_cast<long>(c.legs().size())) : c.trajectory().parameter;
}

Rational wrap(Rational t, const Rational& p) {
  if (t >= p) t -= p;
  return t;
}

struct Crossings {
  bool overlap = false;
  std::vector<IntersectionEvent> events;
};

Crossings regular_crossings(const ClosedGeodesic& c1, const ClosedGeodesic& c2, bool self) {
  const HalfTranslationSurface& s = c1.surface();
  Crossings out;
  std::vector<Piece> p1 = pieces(c1), p2 = pieces(c2);
  Rational per1 = period(c1), per2 = period(c2);
  std::set<std::tuple<std::size_t, Vec2, Rational, Rational>> seen;
  for (std::size_t i = 0; i < p1.size(); ++i)
    for (std::size_t j = self ? i : 0; j < p2.size(); ++j) {
      const Piece& a = p1[i];
      const Piece& b = p2[j];
      if (a.polygon != b.polygon) continue;
      Vec2 da = a.b - a.a, db = b.b - b.a;
      Rational den = cross(da, db);
      if (sgn(den) == 0) {
        if (self || sgn(cross(b.a - a.a, da)) != 0) continue;
        Rational u0 = along(b.a - a.a, da), u1 = along(b.b - a.a, da);
        if (std::max(Rational(0), std::min(u0, u1)) < std::min(Rational(1), std::max(u0, u1))) out.overlap = true;
        continue;
      }
      Rational u = cross(b.a - a.a, db) / den;
      Rational v = cross(b.a - a.a, da) / den;
      if (sgn(u) < 0 || u > 1 || sgn(v) < 0 || v > 1) continue;
      Vec2 z = a.a + u * da;
      const Polygon& P = s.polygon(a.polygon);
      bool singular_vertex = false;
      for (std::size_t k = 0; k < P.size(); ++k)
        if (P.vertex(k) == z && s.vertex_class(s.class_of(CornerRef{a.polygon, k})).singular()) singular_vertex = true;
      if (singular_vertex) continue;
      Rational t1 = wrap(a.t0 + u * (a.t1 - a.t0), per1);
      Rational t2 = wrap(b.t0 + v * (b.t1 - b.t0), per2);
      if (self) {
        if (t1 == t2) continue;
        if (t2 < t1) std::swap(t1, t2);
      }
      SurfacePoint cp = canonical_point(s, SurfacePoint{a.polygon, z});
      if (!seen.emplace(cp.polygon, cp.coords, t1, t2).second) continue;
      IntersectionEvent e;
      e.kind = IntersectionEvent::TransverseRegular;
      e.point = cp;
      e.t1 = t1;
      e.t2 = t2;
      e.linked = true;
      out.events.push_back(std::move(e));
    }
  return out;
}

std::size_t at(long i, std::size_t n) { return static_cast<std::size_t>(((i % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n)); }

struct Singular {
  bool same_image = false;
  std::vector<IntersectionEvent> events;
};

Singular singular_events(const HalfTranslationSurface& s, const std::vector<GeodesicLeg>& L1,
                         const std::vector<GeodesicLeg>& L2, bool self) {
  Singular out;
  std::size_t n1 = L1.size(), n2 = L2.size();
  auto same = [&](long i, long j) { return L1[at(i, n1)].from == L2[at(j, n2)].from; };
  auto opp = [&](long i, long j) { return L1[at(i, n1)].from == L2[at(j, n2)].to; };
  long cap = static_cast<long>(n1 + n2);
  for (long i = 0; i < static_cast<long>(n1); ++i)
    for (long j = 0; j < static_cast<long>(n2); ++j) {
      for (bool reversed : {false, true}) {
        auto match = [&](long k) { return reversed ? opp(i + k, j - k) : same(i + k, j + k); };
        if (!match(0)) continue;
        if (self && !reversed && i == j) continue;
        bool start = true;
        long back = 1;
        while (back <= cap && (reversed ? opp(i - back, j + back) : same(i - back, j - back))) ++back;
        if (back <= cap) start = (back == 1);
        else {
          if (!self) out.same_image = true;
          continue;
        }
        if (!start) continue;
        long m = 1;
        while (m <= cap && match(m)) ++m;
        if (m > cap) {
          if (!self) out.same_image = true;
          continue;
        }
        if (self) {
          if (!reversed && i > j) continue;
          if (reversed) {
            auto mine = std::make_pair(at(i, n1), at(j, n2));
            auto twin = std::make_pair(at(j - m + 1, n1), at(i + m - 1, n2));
            if (twin < mine) continue;
          }
        }
        IntersectionEvent e;
        e.kind = IntersectionEvent::SharedArc;
        e.opposite = reversed;
        e.arc_legs = static_cast<std::size_t>(m);
        e.t1 = Rational(i);
        e.t2 = Rational(j);
        e.r1_minus = L1[at(i - 1, n1)].to;
        e.r0_minus = L1[at(i, n1)].from;
        e.r0_plus = L1[at(i + m - 1, n1)].to;
        e.r1_plus = L1[at(i + m, n1)].from;
        if (reversed) {
          e.r2_minus = L2[at(j + 1, n2)].from;
          e.r2_plus = L2[at(j - m, n2)].to;
        } else {
          e.r2_minus = L2[at(j - 1, n2)].to;
          e.r2_plus = L2[at(j + m, n2)].from;
        }
        e.x1 = e.r0_minus.cone;
        e.x2 = e.r0_plus.cone;
        int far = germ_cyclic_order(s, e.r1_plus, e.r2_plus, e.r0_plus);
        int near = germ_cyclic_order(s, e.r1_minus, e.r2_minus, e.r0_minus);
        e.linked = far != -near;
        out.events.push_back(std::move(e));
      }
    }
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = self ? i + 1 : 0; j < n2; ++j) {
      const Germ& a_in = L1[at(static_cast<long>(i) - 1, n1)].to;
      const Germ& a_out = L1[i].from;
      const Germ& b_in = L2[at(static_cast<long>(j) - 1, n2)].to;
      const Germ& b_out = L2[j].from;
      if (a_out.cone != b_out.cone) continue;
      if (a_in == b_in || a_in == b_out || a_out == b_in || a_out == b_out) continue;
      IntersectionEvent e;
      e.kind = IntersectionEvent::IsolatedSingular;
      e.x1 = e.x2 = a_out.cone;
      e.r1_minus = a_in;
      e.r1_plus = a_out;
      e.r2_minus = b_in;
      e.r2_plus = b_out;
      e.t1 = Rational(static_cast<long>(i));
      e.t2 = Rational(static_cast<long>(j));
      e.linked = germ_cyclic_order(s, a_out, b_out, a_in) != germ_cyclic_order(s, a_out, b_in, a_in);
      out.events.push_back(std::move(e));
    }
  return out;
}

IntersectionPattern pattern(const ClosedGeodesic& c1, const ClosedGeodesic& c2, bool self) {
  if (&c1.surface() != &c2.surface()) throw DifferentSurfaces("geodesics live on different surfaces");
  IntersectionPattern out;
  Crossings x = regular_crossings(c1, c2, self);
  if (x.overlap && !c1.singular() && !c2.singular()) {
    out.same_image = true;
    return out;
  }
  out.events = std::move(x.events);
  if (c1.singular() && c2.singular()) {
    Singular sg = singular_events(c1.surface(), c1.legs(), c2.legs(), self);
    if (sg.same_image) {
      out.same_image = true;
      out.events.clear();
      return out;
    }
    out.events.insert(out.events.end(), sg.events.begin(), sg.events.end());
  }
  std::stable_sort(out.events.begin(), out.events.end(), [](const IntersectionEvent& a, const IntersectionEvent& b) {
    return std::tie(a.kind, a.t1, a.t2) < std::tie(b.kind, b.t1, b.t2);
  });
  return out;
}

}  // namespace

IntersectionPattern intersection_pattern(const ClosedGeodesic& c1, const ClosedGeodesic& c2) {
  return pattern(c1, c2, false);
}

bool are_linked(const ClosedGeodesic& c1, const ClosedGeodesic& c2) { return intersection_pattern(c1, c2).linked(); }

IntersectionPattern self_pattern(const ClosedGeodesic& c) { return pattern(c, c, true); }

bool is_self_linked(const ClosedGeodesic& c) { return self_pattern(c).linked(); }

BoundReport check_family_bounds(const HalfTranslationSurface& s, const std::vector<ClosedGeodesic>& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (&family[i].surface() != &s) throw DifferentSurfaces("family member on another surface");
    if (is_self_linked(family[i])) throw FamilyIsLinked("leaf " + std::to_string(i) + " is self-linked");
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (are_linked(family[i], family[j]))
        throw FamilyIsLinked("leaves " + std::to_string(i) + " and " + std::to_string(j) + " are linked");
  }
  std::set<std::pair<Germ, Vec2>> used;
  for (const auto& c : family)
    for (const auto& l : c.legs()) {
      auto fwd = std::make_pair(l.from, l.holonomy);
      auto bwd = std::make_pair(l.to, reverse_leg_holonomy(l.holonomy, l.to));
      used.insert(std::min(fwd, bwd));
    }
  BoundReport r;
  r.saddle_connections = used.size();
  long k = static_cast<long>(s.singularity_count());
  r.bound = k * k * (6 * s.genus() + 3 * s.boundary_components() - 2);
  return r;
}

}  // namespace flatlam
