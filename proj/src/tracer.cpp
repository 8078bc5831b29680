#include "flatlam/tracer.hpp"

#include <algorithm>

#include "locate.hpp"

namespace flatlam {

using detail::locate;
using detail::Location;

const char* to_string(Termination t) {
  switch (t) {
    case Termination::HitSingularity: return "HitSingularity";
    case Termination::Closed: return "Closed";
    case Termination::LengthBudget: return "LengthBudget";
    case Termination::HitBoundary: return "HitBoundary";
  }
  return "?";
}

SurfacePoint canonical_point(const HalfTranslationSurface& s, const SurfacePoint& p) {
  if (p.polygon >= s.polygons().size()) throw PointOutsideSurface("no such polygon");
  const Polygon& P = s.polygon(p.polygon);
  Location loc = locate(P, p.coords);
  switch (loc.kind) {
    case Location::Outside:
      throw PointOutsideSurface("point " + to_string(p.coords) + " is outside polygon '" + P.id + "'");
    case Location::Interior:
      return p;
    case Location::AtVertex: {
      const ConePoint& c = s.vertex_class(s.class_of(CornerRef{p.polygon, loc.index}));
      CornerRef best = c.corners.front().ref;
      for (const auto& k : c.corners) best = std::min(best, k.ref);
      return SurfacePoint{best.polygon, s.polygon(best.polygon).vertex(best.vertex)};
    }
    case Location::OnEdge: {
      EdgeRef e{p.polygon, loc.index};
      const auto& m = s.across(e);
      if (m && m->to < e) return SurfacePoint{m->to.polygon, m->apply(p.coords)};
      return p;
    }
  }
  return p;
}

namespace {

struct State {
  std::size_t polygon = 0;
  Vec2 z;
  Vec2 d;
  int sign = 1;
};

struct Options {
  Rational budget;
  std::optional<Rational> stop_at;  // leg mode: end exactly at this parameter
};

class Engine {
 public:
  Engine(const HalfTranslationSurface& s, Trajectory& t, Options o) : s_(s), t_(t), o_(std::move(o)) {}

  // Starts the flow from a germ (state is at the germ's vertex).
  void run_from_germ(const Germ& g) {
    const Corner& c = s_.corner(g.cone, g.corner);
    start_ = State{c.ref.polygon, s_.polygon(c.ref.polygon).vertex(c.ref.vertex), g.dir, 1};
    run(start_);
  }

  void run(State st) {
    start_ = st;
    const Rational d2 = norm2(t_.dir);
    while (true) {
      const Polygon& P = s_.polygon(st.polygon);
      if (!o_.stop_at && t_.parameter > 0 && st.polygon == start_.polygon && st.z == start_.z && st.d == start_.d) {
        t_.termination = Termination::Closed;
        return;
      }
      Hit h = next_hit(P, st);
      if (h.along_edge && s_.is_boundary(EdgeRef{st.polygon, *h.along_edge})) {
        t_.termination = Termination::HitBoundary;
        t_.boundary_edge = EdgeRef{st.polygon, *h.along_edge};
        return;
      }
      if (!o_.stop_at && st.polygon == start_.polygon && (st.d == start_.d || st.d == -start_.d) &&
          t_.parameter > 0) {
        // Return to the start point within this piece.
        Vec2 off = start_.z - st.z;
        if (!off.is_zero() && parallel(off, st.d) && sgn(dot(off, st.d)) > 0) {
          Rational tau = dot(off, st.d) / norm2(st.d);
          if (tau <= h.t) {
            Rational T = t_.parameter + tau;
            if (T * T * d2 > o_.budget) {
              t_.termination = Termination::LengthBudget;
              return;
            }
            push(st, start_.z, T);
            t_.termination = Termination::Closed;
            t_.half_period_flip = st.d == -start_.d;
            return;
          }
        }
      }
      Rational T = t_.parameter + h.t;
      if (o_.stop_at && T > *o_.stop_at) throw MalformedPath("leg ends away from a vertex class point");
      if (T * T * d2 > o_.budget) {
        t_.termination = Termination::LengthBudget;
        return;
      }
      Vec2 q = st.z + h.t * st.d;
      push(st, q, T);
      if (!h.vertex) {
        EdgeRef e{st.polygon, h.index};
        const auto& m = s_.across(e);
        if (o_.stop_at && T == *o_.stop_at) throw MalformedPath("leg ends on an edge");
        if (!m) {
          t_.termination = Termination::HitBoundary;
          t_.boundary_edge = e;
          return;
        }
        t_.itinerary.push_back(Crossing{Crossing::Edge, m->gluing});
        st = State{m->to.polygon, m->apply(q), m->apply_dir(st.d), st.sign * m->eps};
        continue;
      }
      CornerRef at{st.polygon, h.index};
      Germ back = s_.make_germ(at, -st.d);
      const ConePoint& cone = s_.vertex_class(back.cone);
      if (o_.stop_at && T == *o_.stop_at) {
        t_.end_germ = back;
        t_.termination = Termination::HitSingularity;
        return;
      }
      if (cone.singular()) {
        if (o_.stop_at) throw MalformedPath("leg passes through a singularity");
        t_.end_germ = back;
        t_.termination = Termination::HitSingularity;
        return;
      }
      if (cone.on_boundary) {
        if (o_.stop_at) throw MalformedPath("leg reaches the boundary");
        t_.termination = Termination::HitBoundary;
        return;
      }
      Germ out = s_.germ_at(back.cone, s_.rotate(back.cone, s_.position(back), 1));
      int flip = same_ray(out.dir, st.d) ? 1 : -1;
      const Corner& oc = s_.corner(out.cone, out.corner);
      t_.itinerary.push_back(Crossing{Crossing::Vertex, back.cone});
      st = State{oc.ref.polygon, s_.polygon(oc.ref.polygon).vertex(oc.ref.vertex), flip * st.d, st.sign * flip};
    }
  }

 private:
  struct Hit {
    Rational t;
    bool vertex = false;
    std::size_t index = 0;
    std::optional<std::size_t> along_edge;
  };

  Hit next_hit(const Polygon& P, const State& st) const {
    std::optional<Hit> best;
    std::optional<std::size_t> along;
    auto offer = [&](const Rational& t, bool vertex, std::size_t idx) {
      if (!best || t < best->t || (t == best->t && vertex && !best->vertex)) best = Hit{t, vertex, idx, {}};
    };
    const Rational dd = norm2(st.d);
    for (std::size_t j = 0; j < P.size(); ++j) {
      const Vec2& A = P.vertex(j);
      const Vec2& B = P.vertex(j + 1);
      Vec2 e = B - A;
      Rational den = cross(st.d, e);
      if (sgn(den) != 0) {
        Rational t = cross(A - st.z, e) / den;
        if (sgn(t) <= 0) continue;
        Rational u = cross(A - st.z, st.d) / den;
        if (sgn(u) < 0 || u > 1) continue;
        if (sgn(u) == 0) offer(t, true, j);
        else if (u == 1) offer(t, true, (j + 1) % P.size());
        else offer(t, false, j);
      } else if (sgn(cross(A - st.z, st.d)) == 0) {
        Rational ta = dot(A - st.z, st.d) / dd;
        Rational tb = dot(B - st.z, st.d) / dd;
        if (sgn(ta) > 0) offer(ta, true, j);
        if (sgn(tb) > 0) offer(tb, true, (j + 1) % P.size());
        if (detail::on_closed_segment(A, B, st.z) && (sgn(ta) > 0 || sgn(tb) > 0)) along = j;
      }
    }
    if (!best) throw std::logic_error("ray leaves polygon '" + P.id + "' without a boundary contact");
    best->along_edge = along;
    return *best;
  }

  void push(const State& st, const Vec2& q, const Rational& T) {
    t_.segments.push_back(Segment{st.polygon, st.z, q, st.sign});
    t_.parameter = T;
  }

  const HalfTranslationSurface& s_;
  Trajectory& t_;
  Options o_;
  State start_;
};

// Corner of the class at vertex `at` whose closed sector contains the
// direction d given in at's polygon frame; singular classes keep `at`.
std::optional<Germ> vertex_germ(const HalfTranslationSurface& s, CornerRef at, const Vec2& d) {
  std::size_t cone = s.class_of(at);
  const ConePoint& cp = s.vertex_class(cone);
  const Corner& here = cp.corners[s.corner_index(at)];
  if (in_arc_closed(here.u, here.w, d)) return s.make_germ(at, d);
  if (cp.singular() || cp.on_boundary) return std::nullopt;
  for (const auto& c : cp.corners) {
    Vec2 local = (c.sign * here.sign) * d;
    if (in_arc_closed(c.u, c.w, local)) return s.make_germ(c.ref, local);
  }
  return std::nullopt;
}

}  // namespace

Trajectory shoot(const HalfTranslationSurface& s, const SurfacePoint& p, const Vec2& d,
                 const Rational& max_sq_length) {
  if (d.is_zero()) throw std::invalid_argument("zero direction");
  if (p.polygon >= s.polygons().size()) throw PointOutsideSurface("no such polygon");
  const Polygon& P = s.polygon(p.polygon);
  Trajectory t;
  t.start = p;
  t.dir = d;
  Location loc = locate(P, p.coords);
  Engine engine(s, t, Options{max_sq_length, std::nullopt});
  switch (loc.kind) {
    case Location::Outside:
      throw PointOutsideSurface("point " + to_string(p.coords) + " is outside polygon '" + P.id + "'");
    case Location::Interior:
      engine.run(State{p.polygon, p.coords, d, 1});
      break;
    case Location::AtVertex: {
      auto g = vertex_germ(s, CornerRef{p.polygon, loc.index}, d);
      if (!g) throw std::invalid_argument("direction " + to_string(d) + " does not enter polygon '" + P.id + "' at vertex " + std::to_string(loc.index));
      t.start_germ = *g;
      const Corner& c = s.corner(g->cone, g->corner);
      int flip = s.corner(s.class_of(CornerRef{p.polygon, loc.index}), s.corner_index(CornerRef{p.polygon, loc.index})).sign * c.sign;
      engine.run(State{c.ref.polygon, s.polygon(c.ref.polygon).vertex(c.ref.vertex), flip * d, flip});
      break;
    }
    case Location::OnEdge: {
      EdgeRef e{p.polygon, loc.index};
      Vec2 ev = P.edge(loc.index);
      int side = sgn(cross(ev, d));
      bool stay = side > 0 || (side == 0 && sgn(dot(ev, d)) > 0);
      if (stay) {
        engine.run(State{p.polygon, p.coords, d, 1});
        break;
      }
      const auto& m = s.across(e);
      if (!m) {
        t.termination = Termination::HitBoundary;
        t.boundary_edge = e;
        break;
      }
      engine.run(State{m->to.polygon, m->apply(p.coords), m->apply_dir(d), m->eps});
      break;
    }
  }
  return t;
}

Trajectory shoot(const HalfTranslationSurface& s, const Germ& g, const Rational& max_sq_length) {
  const Corner& c = s.corner(g.cone, g.corner);
  Trajectory t;
  t.start = SurfacePoint{c.ref.polygon, s.polygon(c.ref.polygon).vertex(c.ref.vertex)};
  t.dir = g.dir;
  t.start_germ = g;
  Engine(s, t, Options{max_sq_length, std::nullopt}).run_from_germ(g);
  return t;
}

Leg trace_leg(const HalfTranslationSurface& s, const Germ& from, const Vec2& holonomy) {
  if (holonomy.is_zero() || !same_ray(holonomy, from.dir))
    throw MalformedPath("leg holonomy " + to_string(holonomy) + " does not leave along its germ");
  const Corner& c = s.corner(from.cone, from.corner);
  Trajectory t;
  t.start = SurfacePoint{c.ref.polygon, s.polygon(c.ref.polygon).vertex(c.ref.vertex)};
  t.dir = holonomy;
  t.start_germ = from;
  Germ g = from;
  g.dir = holonomy;
  Engine(s, t, Options{norm2(holonomy), Rational(1)}).run_from_germ(g);
  if (t.termination != Termination::HitSingularity || t.parameter != 1 || !t.end_germ)
    throw MalformedPath("leg does not end at a vertex class point");
  return Leg{t, *t.end_germ};
}

bool is_legal_transition(const HalfTranslationSurface& s, const Germ& in, const Germ& out) {
  if (in.cone != out.cone) throw MalformedPath("transition between different vertex classes");
  const ConePoint& cp = s.vertex_class(in.cone);
  LinkAngle a = s.position(in);
  LinkAngle b = s.position(out);
  if (a == b) return false;
  if (!cp.on_boundary) return s.ccw_angle_at_least(in.cone, a, b, 1) && s.ccw_angle_at_least(in.cone, b, a, 1);
  const LinkAngle& lo = a < b ? a : b;
  const LinkAngle& hi = a < b ? b : a;
  return compare(LinkAngle{lo.halfturns + 1, lo.residual}, hi) <= 0 &&
         compare(LinkAngle{hi.halfturns + 1, hi.residual}, LinkAngle{lo.halfturns + cp.k, lo.residual}) <= 0;
}

Continuations continuations(const HalfTranslationSurface& s, const Germ& incoming, Policy policy) {
  const ConePoint& cp = s.vertex_class(incoming.cone);
  LinkAngle a = s.position(incoming);
  Continuations out;
  if (!cp.on_boundary) {
    Germ right = s.germ_at(cp.id, s.rotate(cp.id, a, 1));
    if (cp.k == 2) {
      out.germs = {right};
      return out;
    }
    Germ left = s.germ_at(cp.id, s.rotate(cp.id, a, cp.k - 1));
    out.branching = true;
    out.continuum = true;
    if (policy == Policy::RightTight) out.germs = {right};
    else if (policy == Policy::LeftTight) out.germs = {left};
    else out.germs = {right, left};
    return out;
  }
  // Boundary class: the link is the interval [0, k pi].
  const LinkAngle lo{0, cp.axis};
  const LinkAngle hi{cp.k, cp.axis};
  auto shift = [&](long n) { return LinkAngle{a.halfturns + n, a.residual}; };
  auto in_range = [&](const LinkAngle& x) { return lo <= x && x <= hi; };
  auto legal = [&](const LinkAngle& x) { return in_range(x) && is_legal_transition(s, incoming, s.germ_at(cp.id, x)); };
  out.branching = cp.singular();
  std::vector<LinkAngle> ends;
  if (policy != Policy::LeftTight && legal(shift(1))) {
    ends.push_back(shift(1));
    LinkAngle far = std::min(hi, shift(cp.k - 1));
    if (policy == Policy::Enumerate && shift(1) < far) {
      ends.push_back(far);
      out.continuum = true;
    }
  }
  if (policy != Policy::RightTight && legal(shift(-1))) {
    ends.push_back(shift(-1));
    LinkAngle far = std::max(lo, shift(1 - cp.k));
    if (policy == Policy::Enumerate && far < shift(-1)) {
      ends.push_back(far);
      out.continuum = true;
    }
  }
  std::sort(ends.begin(), ends.end());
  for (const auto& e : ends) out.germs.push_back(s.germ_at(cp.id, e));
  return out;
}

bool is_local_geodesic(const HalfTranslationSurface& s, const GeodesicPath& path) {
  if (path.legs.empty()) throw MalformedPath("empty path");
  std::vector<Germ> starts, ends;
  for (const auto& leg : path.legs) {
    const Corner& c = s.corner(leg.from.cone, leg.from.corner);
    Germ g = s.make_germ(c.ref, leg.from.dir);
    starts.push_back(g);
    ends.push_back(trace_leg(s, g, (c.sign * s.corner(g.cone, g.corner).sign) * leg.holonomy).end);
  }
  bool ok = true;
  std::size_t n = path.legs.size();
  std::size_t joins = path.closed ? n : n - 1;
  for (std::size_t i = 0; i < joins; ++i) {
    const Germ& in = ends[i];
    const Germ& out = starts[(i + 1) % n];
    if (in.cone != out.cone) throw MalformedPath("leg " + std::to_string(i) + " does not end where the next leg starts");
    if (!is_legal_transition(s, in, out)) ok = false;
  }
  return ok;
}

}  // namespace flatlam
