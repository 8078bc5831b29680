#include "flatlam/surface.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "flatlam/triangulate.hpp"

namespace flatlam {

Rational Polygon::signed_area() const {
  Rational a2 = 0;
  for (std::size_t i = 0; i < size(); ++i) a2 += cross(vertex(i), vertex(i + 1));
  return a2 / 2;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

namespace {

std::string summarize(const ValidationReport& r) {
  std::string s = "invalid surface:";
  for (const auto& v : r.violations) s += " [" + v.code + "] " + v.message + ";";
  return s;
}

int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return sgn(cross(b - a, c - a)); }

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return orient(a, b, p) == 0 && sgn(dot(p - a, p - b)) <= 0;
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

std::string edge_name(const SurfaceData& d, EdgeRef e) {
  std::string id = e.polygon < d.polygons.size() ? d.polygons[e.polygon].id : "#" + std::to_string(e.polygon);
  return id + ":" + std::to_string(e.index);
}

using AcrossTable = std::vector<std::vector<std::optional<EdgeMap>>>;

struct ClassWalk {
  std::vector<ConePoint> classes;
  std::vector<std::vector<std::size_t>> corner_class;
  std::vector<std::vector<std::size_t>> corner_pos;
};

ClassWalk walk_classes(const SurfaceData& data, const AcrossTable& across) {
  ClassWalk out;
  const auto& polys = data.polygons;
  out.corner_class.resize(polys.size());
  out.corner_pos.resize(polys.size());
  for (std::size_t p = 0; p < polys.size(); ++p) {
    out.corner_class[p].assign(polys[p].size(), SIZE_MAX);
    out.corner_pos[p].assign(polys[p].size(), SIZE_MAX);
  }

  auto walk = [&](CornerRef first, bool boundary) {
    ConePoint cp;
    cp.id = out.classes.size();
    cp.on_boundary = boundary;
    CornerRef c = first;
    int s = 1;
    long h = 0;
    cp.axis = polys[first.polygon].edge(first.vertex);
    while (true) {
      const Polygon& P = polys[c.polygon];
      Corner corner;
      corner.ref = c;
      corner.sign = s;
      corner.u = P.edge(c.vertex);
      corner.w = -P.edge(c.vertex + P.size() - 1);
      Vec2 gu = s * corner.u;
      corner.start = LinkAngle{h, (h % 2 == 0 ? 1 : -1) * gu};
      out.corner_class[c.polygon][c.vertex] = cp.id;
      out.corner_pos[c.polygon][c.vertex] = cp.corners.size();
      cp.corners.push_back(corner);
      Vec2 gw = s * corner.w;
      h += line_hits(cp.axis, gu, gw);
      EdgeRef incoming{c.polygon, (c.vertex + P.size() - 1) % P.size()};
      const auto& m = across[incoming.polygon][incoming.index];
      if (!m) {
        if (!boundary) throw std::logic_error("interior vertex walk reached the boundary");
        if (!parallel(gw, cp.axis))
          throw AngleNotMultipleOfPi("boundary vertex at " + polys[first.polygon].id + ":" +
                                     std::to_string(first.vertex) + " has angle not a multiple of pi");
        break;
      }
      c = CornerRef{m->to.polygon, m->to.index};
      s *= m->eps;
      if (c == first) {
        if (boundary) throw std::logic_error("boundary vertex walk closed up");
        if (!same_ray(s * polys[c.polygon].edge(c.vertex), (h % 2 == 0 ? 1 : -1) * cp.axis))
          throw AngleNotMultipleOfPi("vertex class holonomy is not +-Id");
        break;
      }
      if (out.corner_class[c.polygon][c.vertex] != SIZE_MAX)
        throw std::logic_error("vertex walk re-entered a visited corner");
    }
    cp.k = static_cast<int>(h);
    out.classes.push_back(std::move(cp));
  };

  for (std::size_t p = 0; p < polys.size(); ++p)
    for (std::size_t i = 0; i < polys[p].size(); ++i)
      if (!across[p][i] && out.corner_class[p][i] == SIZE_MAX) walk(CornerRef{p, i}, true);
  for (std::size_t p = 0; p < polys.size(); ++p)
    for (std::size_t i = 0; i < polys[p].size(); ++i)
      if (out.corner_class[p][i] == SIZE_MAX) walk(CornerRef{p, i}, false);
  return out;
}

AcrossTable build_across(const SurfaceData& data) {
  AcrossTable t(data.polygons.size());
  for (std::size_t p = 0; p < data.polygons.size(); ++p) t[p].resize(data.polygons[p].size());
  for (std::size_t g = 0; g < data.gluings.size(); ++g) {
    const auto& gl = data.gluings[g];
    t[gl.a.polygon][gl.a.index] = make_edge_map(data, g, true);
    t[gl.b.polygon][gl.b.index] = make_edge_map(data, g, false);
  }
  return t;
}

}  // namespace

InvalidSurface::InvalidSurface(ValidationReport r) : std::runtime_error(summarize(r)), report(std::move(r)) {}

EdgeMap make_edge_map(const SurfaceData& data, std::size_t gluing, bool from_a) {
  const Gluing& g = data.gluings[gluing];
  EdgeRef from = from_a ? g.a : g.b;
  EdgeRef to = from_a ? g.b : g.a;
  const Polygon& P = data.polygons[from.polygon];
  const Polygon& Q = data.polygons[to.polygon];
  EdgeMap m;
  m.to = to;
  m.kind = g.kind;
  m.gluing = gluing;
  m.eps = g.kind == GluingKind::Translation ? 1 : -1;
  // from.start lands on to.end.
  m.offset = Q.vertex(to.index + 1) - m.eps * P.vertex(from.index);
  return m;
}

ValidationReport validate_surface(const SurfaceData& data) {
  ValidationReport r;
  auto add = [&](std::string code, std::string msg) { r.violations.push_back({std::move(code), std::move(msg)}); };
  const auto& polys = data.polygons;

  if (polys.empty()) add("empty", "surface has no polygons");
  std::set<std::string> ids;
  for (const auto& P : polys) {
    if (!ids.insert(P.id).second) add("duplicate-polygon-id", "polygon id '" + P.id + "' repeated");
    if (P.size() < 3) {
      add("degenerate-polygon", "polygon '" + P.id + "' has fewer than 3 vertices");
      continue;
    }
    bool distinct = true;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (P.vertex(i) == P.vertex(i + 1)) distinct = false;
    if (!distinct) {
      add("repeated-vertex", "polygon '" + P.id + "' has equal consecutive vertices");
      continue;
    }
    if (sgn(P.signed_area()) <= 0) add("not-ccw", "polygon '" + P.id + "' is not counterclockwise");
    bool simple = true;
    std::size_t n = P.size();
    for (std::size_t i = 0; i < n && simple; ++i) {
      // Adjacent edges may only meet at their shared vertex.
      if (sgn(cross(P.edge(i), P.edge(i + 1))) == 0 && sgn(dot(P.edge(i), P.edge(i + 1))) < 0) simple = false;
      for (std::size_t j = i + 2; j < n && simple; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (segments_intersect(P.vertex(i), P.vertex(i + 1), P.vertex(j), P.vertex(j + 1))) simple = false;
      }
    }
    if (!simple) add("not-simple", "polygon '" + P.id + "' self-intersects");
  }

  std::map<EdgeRef, std::size_t> used;
  bool refs_ok = true;
  for (std::size_t g = 0; g < data.gluings.size(); ++g) {
    const auto& gl = data.gluings[g];
    bool ok = true;
    for (EdgeRef e : {gl.a, gl.b}) {
      if (e.polygon >= polys.size() || e.index >= polys[e.polygon].size()) {
        add("dangling-edge", "gluing " + std::to_string(g) + " references missing edge " + edge_name(data, e));
        ok = false;
      }
    }
    if (!ok) {
      refs_ok = false;
      continue;
    }
    if (gl.a == gl.b) {
      add("self-gluing", "gluing " + std::to_string(g) + " pairs edge " + edge_name(data, gl.a) + " with itself");
      refs_ok = false;
      continue;
    }
    for (EdgeRef e : {gl.a, gl.b}) {
      auto [it, fresh] = used.emplace(e, g);
      if (!fresh) {
        add("edge-reused", "edge " + edge_name(data, e) + " appears in gluings " + std::to_string(it->second) +
                               " and " + std::to_string(g));
        refs_ok = false;
      }
    }
    Vec2 va = polys[gl.a.polygon].edge(gl.a.index);
    Vec2 vb = polys[gl.b.polygon].edge(gl.b.index);
    bool match = gl.kind == GluingKind::Translation ? vb == -va : vb == va;
    if (!match)
      add("vector-mismatch", "gluing " + std::to_string(g) + " (" + edge_name(data, gl.a) + " ~ " +
                                 edge_name(data, gl.b) + ") edge vectors " + to_string(va) + " and " +
                                 to_string(vb) + " do not match a " +
                                 (gl.kind == GluingKind::Translation ? "translation" : "flip"));
  }
  if (!r.ok() || !refs_ok) return r;

  // Connectivity.
  std::vector<std::size_t> parent(polys.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& gl : data.gluings) parent[find(gl.a.polygon)] = find(gl.b.polygon);
  for (std::size_t p = 1; p < polys.size(); ++p)
    if (find(p) != find(0)) {
      add("disconnected", "polygon '" + polys[p].id + "' is not connected to '" + polys[0].id + "'");
      break;
    }

  AcrossTable across = build_across(data);
  ClassWalk walk;
  try {
    walk = walk_classes(data, across);
  } catch (const AngleNotMultipleOfPi& e) {
    add("angle-not-multiple-of-pi", e.what());
    return r;
  }
  for (const auto& c : walk.classes) {
    const auto& ref = c.corners.front().ref;
    std::string where = polys[ref.polygon].id + ":" + std::to_string(ref.vertex);
    if (!c.on_boundary && c.k < 2)
      add("interior-angle-too-small", "interior vertex class at " + where + " has angle " + std::to_string(c.k) + "pi");
    if (c.on_boundary && c.k < 1)
      add("boundary-angle-too-small", "boundary vertex class at " + where + " has angle " + std::to_string(c.k) + "pi");
  }

  std::optional<Direction> boundary_dir;
  for (std::size_t p = 0; p < polys.size(); ++p)
    for (std::size_t i = 0; i < polys[p].size(); ++i) {
      if (across[p][i]) continue;
      Direction d(polys[p].edge(i));
      if (!boundary_dir) boundary_dir = d;
      else if (!(d == *boundary_dir)) {
        add("boundary-direction", "boundary edge " + polys[p].id + ":" + std::to_string(i) +
                                      " is not parallel to the other boundary edges");
        return r;
      }
    }
  return r;
}

int compare(const LinkAngle& a, const LinkAngle& b) {
  if (a.halfturns != b.halfturns) return a.halfturns < b.halfturns ? -1 : 1;
  if (same_ray(a.residual, b.residual)) return 0;
  return sgn(cross(a.residual, b.residual)) > 0 ? -1 : 1;
}

HalfTranslationSurface::HalfTranslationSurface(SurfaceData data) : data_(std::move(data)) {
  ValidationReport r = validate_surface(data_);
  if (!r.ok()) throw InvalidSurface(std::move(r));
  across_ = build_across(data_);
  ClassWalk w = walk_classes(data_, across_);
  classes_ = std::move(w.classes);
  corner_class_ = std::move(w.corner_class);
  corner_pos_ = std::move(w.corner_pos);
  for (std::size_t p = 0; p < data_.polygons.size(); ++p) index_[data_.polygons[p].id] = p;
  tri_ = std::make_shared<const Triangulation>(triangulate(data_, across_));
}

std::optional<std::size_t> HalfTranslationSurface::polygon_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t HalfTranslationSurface::singularity_count() const {
  return static_cast<std::size_t>(
      std::count_if(classes_.begin(), classes_.end(), [](const ConePoint& c) { return c.singular(); }));
}

Germ HalfTranslationSurface::make_germ(CornerRef c, const Vec2& dir) const {
  std::size_t cone = class_of(c);
  std::size_t idx = corner_index(c);
  const ConePoint& cp = classes_[cone];
  const Corner& k = cp.corners[idx];
  if (dir.is_zero() || !in_arc_closed(k.u, k.w, dir))
    throw std::invalid_argument("germ direction " + to_string(dir) + " outside corner sector");
  if (same_ray(dir, k.w) && (!cp.on_boundary || idx + 1 < cp.corners.size())) {
    std::size_t next = (idx + 1) % cp.corners.size();
    const Corner& n = cp.corners[next];
    return Germ{cone, next, primitive((k.sign * n.sign) * dir)};
  }
  return Germ{cone, idx, primitive(dir)};
}

LinkAngle HalfTranslationSurface::position(const Germ& g) const {
  const ConePoint& cp = classes_[g.cone];
  const Corner& k = cp.corners[g.corner];
  Vec2 gu = k.sign * k.u;
  Vec2 gd = k.sign * g.dir;
  long m = k.start.halfturns;
  if (!same_ray(gu, gd)) m += line_hits(cp.axis, gu, gd);
  return LinkAngle{m, (m % 2 == 0 ? 1 : -1) * gd};
}

Germ HalfTranslationSurface::germ_at(std::size_t cone, const LinkAngle& a) const {
  const ConePoint& cp = classes_[cone];
  std::size_t idx = 0;
  for (std::size_t i = 0; i < cp.corners.size(); ++i)
    if (cp.corners[i].start <= a) idx = i;
  const Corner& k = cp.corners[idx];
  Vec2 local = (k.sign * (a.halfturns % 2 == 0 ? 1 : -1)) * a.residual;
  return make_germ(k.ref, local);
}

LinkAngle HalfTranslationSurface::rotate(std::size_t cone, const LinkAngle& a, long n) const {
  const ConePoint& cp = classes_[cone];
  long m = a.halfturns + n;
  if (!cp.on_boundary) m = ((m % cp.k) + cp.k) % cp.k;
  return LinkAngle{m, a.residual};
}

bool HalfTranslationSurface::ccw_angle_at_least(std::size_t cone, const LinkAngle& from, const LinkAngle& to,
                                                long n) const {
  const ConePoint& cp = classes_[cone];
  LinkAngle t = to;
  if (compare(to, from) < 0) {
    if (cp.on_boundary) return n <= 0;
    t.halfturns += cp.k;
  }
  return compare(LinkAngle{from.halfturns + n, from.residual}, t) <= 0;
}

bool HalfTranslationSurface::ccw_angle_equals(std::size_t cone, const LinkAngle& from, const LinkAngle& to,
                                              long n) const {
  const ConePoint& cp = classes_[cone];
  LinkAngle t = to;
  if (compare(to, from) < 0) {
    if (cp.on_boundary) return false;
    t.halfturns += cp.k;
  }
  return compare(LinkAngle{from.halfturns + n, from.residual}, t) == 0;
}

Rational HalfTranslationSurface::area() const {
  Rational a = 0;
  for (const auto& P : data_.polygons) a += P.signed_area();
  return a;
}

int HalfTranslationSurface::euler_characteristic() const {
  std::size_t edges = data_.gluings.size();
  for (std::size_t p = 0; p < data_.polygons.size(); ++p)
    for (std::size_t i = 0; i < data_.polygons[p].size(); ++i)
      if (!across_[p][i]) ++edges;
  return static_cast<int>(classes_.size()) - static_cast<int>(edges) + static_cast<int>(data_.polygons.size());
}

int HalfTranslationSurface::boundary_components() const {
  std::map<EdgeRef, EdgeRef> parent;
  std::function<EdgeRef(EdgeRef)> find = [&](EdgeRef e) {
    EdgeRef p = parent.at(e);
    if (p == e) return e;
    return parent[e] = find(p);
  };
  for (std::size_t p = 0; p < data_.polygons.size(); ++p)
    for (std::size_t i = 0; i < data_.polygons[p].size(); ++i)
      if (!across_[p][i]) parent[EdgeRef{p, i}] = EdgeRef{p, i};
  for (const auto& cp : classes_) {
    if (!cp.on_boundary) continue;
    const Corner& first = cp.corners.front();
    const Corner& last = cp.corners.back();
    EdgeRef out{first.ref.polygon, first.ref.vertex};
    std::size_t n = data_.polygons[last.ref.polygon].size();
    EdgeRef in{last.ref.polygon, (last.ref.vertex + n - 1) % n};
    parent[find(out)] = find(in);
  }
  int count = 0;
  for (const auto& [e, p] : parent)
    if (find(e) == e) ++count;
  return count;
}

int HalfTranslationSurface::genus() const {
  return (2 - euler_characteristic() - boundary_components()) / 2;
}

std::vector<ConePoint> compute_singularities(const HalfTranslationSurface& s) {
  std::vector<ConePoint> out;
  for (const auto& c : s.vertex_classes())
    if (c.singular()) out.push_back(c);
  return out;
}

int euler_characteristic(const HalfTranslationSurface& s) { return s.euler_characteristic(); }

}  // namespace flatlam
