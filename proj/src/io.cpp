#include "flatlam/io.hpp"

#include <fstream>
#include <sstream>

namespace flatlam::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? "/" : where) + ": " + what);
}

const json& member(const json& j, const std::string& where, const char* key) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

const json& array_at(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::size_t index(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::size_t polygon_named(const SurfaceData& d, const std::string& id, const std::string& where) {
  for (std::size_t i = 0; i < d.polygons.size(); ++i)
    if (d.polygons[i].id == id) return i;
  fail(where, "unknown polygon '" + id + "'");
}

// [polygon id, index]
std::pair<std::size_t, std::size_t> polygon_slot(const SurfaceData& d, const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [polygon id, index]");
  return {polygon_named(d, str(j[0], where + "/0"), where + "/0"), index(j[1], where + "/1")};
}

json crossing_json(const Crossing& c) {
  return json{{c.kind == Crossing::Edge ? "edge" : "vertex", c.index}};
}

Crossing crossing_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) fail(where, "expected {\"edge\": k} or {\"vertex\": k}");
  if (j.contains("edge")) return Crossing{Crossing::Edge, index(j["edge"], where + "/edge")};
  if (j.contains("vertex")) return Crossing{Crossing::Vertex, index(j["vertex"], where + "/vertex")};
  fail(where, "expected {\"edge\": k} or {\"vertex\": k}");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto with_file(const std::string& path, F&& f) {
  json j = read_json_file(path);
  try {
    return f(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

json read_json_file(const std::string& path) {
  std::string text = slurp(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(where, "expected a rational \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

json to_json(const Rational& r) { return to_string(r); }

Vec2 vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected a pair of rationals");
  return Vec2(rational_from_json(j[0], where + "/0"), rational_from_json(j[1], where + "/1"));
}

json to_json(const Vec2& v) { return json::array({to_json(v.x), to_json(v.y)}); }

SurfaceData surface_from_json(const json& j) {
  SurfaceData d;
  const json& polys = array_at(member(j, "", "polygons"), "/polygons");
  for (std::size_t i = 0; i < polys.size(); ++i) {
    std::string w = "/polygons/" + std::to_string(i);
    Polygon p;
    p.id = str(member(polys[i], w, "id"), w + "/id");
    const json& vs = array_at(member(polys[i], w, "vertices"), w + "/vertices");
    for (std::size_t k = 0; k < vs.size(); ++k) p.vertices.push_back(vec_from_json(vs[k], w + "/vertices/" + std::to_string(k)));
    d.polygons.push_back(std::move(p));
  }
  const json& gl = array_at(member(j, "", "gluings"), "/gluings");
  for (std::size_t i = 0; i < gl.size(); ++i) {
    std::string w = "/gluings/" + std::to_string(i);
    auto a = polygon_slot(d, member(gl[i], w, "a"), w + "/a");
    auto b = polygon_slot(d, member(gl[i], w, "b"), w + "/b");
    std::string kind = str(member(gl[i], w, "kind"), w + "/kind");
    Gluing g{EdgeRef{a.first, a.second}, EdgeRef{b.first, b.second}, GluingKind::Translation};
    if (kind == "flip") g.kind = GluingKind::Flip;
    else if (kind != "translation") fail(w + "/kind", "expected \"translation\" or \"flip\"");
    d.gluings.push_back(g);
  }
  return d;
}

json to_json(const SurfaceData& d) {
  json polys = json::array();
  for (const auto& p : d.polygons) {
    json vs = json::array();
    for (const auto& v : p.vertices) vs.push_back(to_json(v));
    polys.push_back(json{{"id", p.id}, {"vertices", vs}});
  }
  json gl = json::array();
  for (const auto& g : d.gluings)
    gl.push_back(json{{"a", json::array({d.polygons[g.a.polygon].id, g.a.index})},
                      {"b", json::array({d.polygons[g.b.polygon].id, g.b.index})},
                      {"kind", g.kind == GluingKind::Flip ? "flip" : "translation"}});
  return json{{"polygons", polys}, {"gluings", gl}};
}

RibbonGraph graph_from_json(const json& j) {
  std::vector<std::string> vertices;
  const json& vs = array_at(member(j, "", "vertices"), "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) vertices.push_back(str(vs[i], "/vertices/" + std::to_string(i)));
  std::vector<RibbonEdge> edges;
  const json& es = array_at(member(j, "", "edges"), "/edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string w = "/edges/" + std::to_string(i);
    RibbonEdge e;
    e.id = str(member(es[i], w, "id"), w + "/id");
    const json& ends = member(es[i], w, "ends");
    if (!ends.is_array() || ends.size() != 2) fail(w + "/ends", "expected two vertex names");
    for (int k = 0; k < 2; ++k) {
      std::string v = str(ends[k], w + "/ends/" + std::to_string(k));
      auto it = std::find(vertices.begin(), vertices.end(), v);
      if (it == vertices.end()) fail(w + "/ends/" + std::to_string(k), "unknown vertex '" + v + "'");
      e.ends[k] = static_cast<std::size_t>(it - vertices.begin());
    }
    if (es[i].contains("length")) e.length = rational_from_json(es[i]["length"], w + "/length");
    edges.push_back(std::move(e));
  }
  std::map<std::string, std::vector<std::string>> order;
  const json& co = member(j, "", "cyclic_order");
  if (!co.is_object()) fail("/cyclic_order", "expected an object");
  for (const auto& [v, list] : co.items()) {
    std::string w = "/cyclic_order/" + v;
    for (std::size_t k = 0; k < array_at(list, w).size(); ++k) order[v].push_back(str(list[k], w + "/" + std::to_string(k)));
  }
  return RibbonGraph::from_names(std::move(vertices), std::move(edges), order);
}

json to_json(const RibbonGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back(json{{"id", e.id}, {"ends", json::array({g.vertices()[e.ends[0]], g.vertices()[e.ends[1]]})},
                         {"length", to_json(e.length)}});
  json order = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    json hs = json::array();
    for (std::size_t h : g.order(v)) hs.push_back(g.name(h));
    order[g.vertices()[v]] = hs;
  }
  return json{{"vertices", g.vertices()}, {"edges", edges}, {"cyclic_order", order}};
}

namespace {

ClosedGeodesic geodesic_at(const HalfTranslationSurface& s, const json& j, const std::string& w) {
  const SurfaceData& d = s.data();
  if (j.is_object() && j.contains("legs")) {
    GeodesicPath p;
    p.closed = true;
    const json& legs = array_at(j["legs"], w + "/legs");
    if (legs.empty()) fail(w + "/legs", "expected at least one leg");
    for (std::size_t i = 0; i < legs.size(); ++i) {
      std::string lw = w + "/legs/" + std::to_string(i);
      auto [poly, vert] = polygon_slot(d, member(legs[i], lw, "corner"), lw + "/corner");
      if (vert >= d.polygons[poly].size()) fail(lw + "/corner", "vertex index out of range");
      Vec2 h = vec_from_json(member(legs[i], lw, "holonomy"), lw + "/holonomy");
      if (h.is_zero()) fail(lw + "/holonomy", "zero holonomy");
      try {
        p.legs.push_back(PathLeg{s.make_germ(CornerRef{poly, vert}, primitive(h)), h});
      } catch (const std::exception& e) {
        fail(lw, e.what());
      }
    }
    try {
      return ClosedGeodesic::from_path(s, p);
    } catch (const MalformedPath& e) {
      fail(w + "/legs", e.what());
    }
  }
  const json& start = member(j, w, "start");
  std::size_t poly = polygon_named(d, str(member(start, w + "/start", "polygon"), w + "/start/polygon"), w + "/start/polygon");
  Vec2 pt = vec_from_json(member(start, w + "/start", "point"), w + "/start/point");
  Vec2 dir = vec_from_json(member(j, w, "direction"), w + "/direction");
  if (dir.is_zero()) fail(w + "/direction", "zero direction");
  const json& period = array_at(member(j, w, "period"), w + "/period");
  std::vector<Crossing> cert;
  for (std::size_t i = 0; i < period.size(); ++i) cert.push_back(crossing_from_json(period[i], w + "/period/" + std::to_string(i)));
  Rational budget = norm2(dir);
  Trajectory t;
  try {
    for (int round = 0; round < 200; ++round, budget *= 2) {
      t = shoot(s, SurfacePoint{poly, pt}, dir, budget);
      if (t.termination != Termination::LengthBudget || t.itinerary.size() > cert.size()) break;
    }
  } catch (const PointOutsideSurface& e) {
    fail(w + "/start", e.what());
  }
  if (t.termination != Termination::Closed)
    fail(w, std::string("trajectory does not close (") + to_string(t.termination) + ")");
  if (t.itinerary != cert) fail(w + "/period", "closure certificate does not match the traced itinerary");
  return ClosedGeodesic::from_trajectory(s, t);
}

}  // namespace

ClosedGeodesic geodesic_from_json(const HalfTranslationSurface& s, const json& j) { return geodesic_at(s, j, ""); }

json to_json(const HalfTranslationSurface& s, const ClosedGeodesic& c) {
  const SurfaceData& d = s.data();
  if (c.singular()) {
    json legs = json::array();
    for (const auto& l : c.legs()) {
      const Corner& k = s.corner(l.from.cone, l.from.corner);
      legs.push_back(json{{"corner", json::array({d.polygons[k.ref.polygon].id, k.ref.vertex})}, {"holonomy", to_json(l.holonomy)}});
    }
    return json{{"legs", legs}};
  }
  const Trajectory& t = c.trajectory();
  json period = json::array();
  for (const auto& x : t.itinerary) period.push_back(crossing_json(x));
  return json{{"start", {{"polygon", d.polygons[t.start.polygon].id}, {"point", to_json(t.start.coords)}}},
              {"direction", to_json(t.dir)},
              {"period", period}};
}

LeafFamily family_from_json(const HalfTranslationSurface& s, const json& j) {
  LeafFamily f;
  const json& leaves = array_at(member(j, "", "leaves"), "/leaves");
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    std::string w = "/leaves/" + std::to_string(i);
    f.leaves.push_back(geodesic_at(s, leaves[i], w));
    Provenance p = Provenance::User;
    if (leaves[i].contains("provenance")) {
      std::string tag = str(leaves[i]["provenance"], w + "/provenance");
      if (tag == "cylinder-core") p = Provenance::CylinderCore;
      else if (tag == "separatrix-cycle") p = Provenance::SeparatrixCycle;
      else if (tag != "user") fail(w + "/provenance", "unknown provenance '" + tag + "'");
    }
    f.provenance.push_back(p);
  }
  if (j.contains("full")) {
    const json& full = array_at(j["full"], "/full");
    for (std::size_t i = 0; i < full.size(); ++i) {
      std::size_t k = index(full[i], "/full/" + std::to_string(i));
      if (k >= f.leaves.size()) fail("/full/" + std::to_string(i), "leaf index out of range");
      f.declared_full.insert(k);
    }
  }
  return close_under_reversal(std::move(f));
}

json to_json(const HalfTranslationSurface& s, const LeafFamily& f) {
  json leaves = json::array();
  for (std::size_t i = 0; i < f.leaves.size(); ++i) {
    json g = to_json(s, f.leaves[i]);
    if (i < f.provenance.size()) g["provenance"] = to_string(f.provenance[i]);
    leaves.push_back(std::move(g));
  }
  json out{{"leaves", leaves}};
  if (!f.declared_full.empty()) out["full"] = json(std::vector<std::size_t>(f.declared_full.begin(), f.declared_full.end()));
  return out;
}

SurfaceData load_surface(const std::string& path) {
  return with_file(path, [](const json& j) { return surface_from_json(j); });
}

RibbonGraph load_graph(const std::string& path) {
  return with_file(path, [](const json& j) { return graph_from_json(j); });
}

ClosedGeodesic load_geodesic(const HalfTranslationSurface& s, const std::string& path) {
  return with_file(path, [&](const json& j) { return geodesic_from_json(s, j); });
}

LeafFamily load_family(const HalfTranslationSurface& s, const std::string& path) {
  return with_file(path, [&](const json& j) { return family_from_json(s, j); });
}

std::string trajectory_lines(const HalfTranslationSurface& s, const Trajectory& t) {
  std::string out;
  for (const auto& seg : t.segments) {
    json line{{"polygon", s.polygon(seg.polygon).id},
              {"from", to_json(seg.from)},
              {"to", to_json(seg.to)},
              {"holonomy", to_json(seg.to - seg.from)}};
    out += line.dump() + "\n";
  }
  json summary{{"termination", to_string(t.termination)}, {"holonomy", to_json(t.holonomy())},
               {"sq_length", to_json(t.sq_length())}};
  if (t.half_period_flip) summary["half_period_flip"] = true;
  if (t.boundary_edge)
    summary["boundary_edge"] = json::array({s.polygon(t.boundary_edge->polygon).id, t.boundary_edge->index});
  out += summary.dump() + "\n";
  return out;
}

}  // namespace flatlam::io
