#include "flatlam/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "flatlam/io.hpp"
#include "flatlam/svg.hpp"

namespace flatlam::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out) const {
    std::vector<std::size_t> w;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (w.size() <= i) w.push_back(0);
        w[i] = std::max(w[i], r[i].size());
      }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(w[i] - r[i].size() + 2, ' ');
      }
      out << line << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

Vec2 parse_vec(const std::string& text, const char* what) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError(std::string(what) + " must be p/q,r/s");
  try {
    return Vec2(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
  } catch (const ParseError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

Direction parse_direction(const std::string& text) {
  Vec2 v = parse_vec(text, "--direction");
  if (v.is_zero()) throw UsageError("--direction must be nonzero");
  return Direction(v);
}

Rational parse_budget(const std::string& text) {
  try {
    Rational r = parse_rational(text);
    if (r <= 0) throw UsageError("--budget must be positive");
    return r;
  } catch (const ParseError& e) {
    throw UsageError(std::string("--budget: ") + e.what());
  }
}

std::string corner_name(const HalfTranslationSurface& s, const Germ& g) {
  const Corner& c = s.corner(g.cone, g.corner);
  return s.polygon(c.ref.polygon).id + ":" + std::to_string(c.ref.vertex);
}

std::string germ_name(const HalfTranslationSurface& s, const Germ& g) {
  return "z" + std::to_string(g.cone) + "@" + corner_name(s, g) + to_string(g.dir);
}

std::string height_text(const Cylinder& c) {
  if (auto h = c.height()) return to_string(*h);
  return "sqrt(" + to_string(c.height_sq) + ")";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

HalfTranslationSurface open_surface(const std::string& path) { return HalfTranslationSurface(io::load_surface(path)); }

int do_validate(const std::string& path, std::ostream& out) {
  SurfaceData d = io::load_surface(path);
  ValidationReport r = validate_surface(d);
  if (!r.ok()) {
    out << "INVALID: " << r.violations.size() << " violation(s)\n";
    for (const auto& v : r.violations) out << "  " << v.code << ": " << v.message << "\n";
    return Invalid;
  }
  HalfTranslationSurface s(std::move(d));
  out << "OK: " << s.singularity_count() << " singularities, \xcf\x87=" << s.euler_characteristic() << "\n";
  return Ok;
}

int do_singularities(const std::string& path, std::ostream& out) {
  HalfTranslationSurface s = open_surface(path);
  Table t({"cone", "angle", "boundary", "singular", "corners"});
  for (const auto& c : s.vertex_classes()) {
    std::string corners;
    for (const auto& k : c.corners) corners += (corners.empty() ? "" : " ") + s.polygon(k.ref.polygon).id + ":" + std::to_string(k.ref.vertex);
    t.add({"z" + std::to_string(c.id), std::to_string(c.k) + "pi", c.on_boundary ? "yes" : "no", c.singular() ? "yes" : "no", corners});
  }
  t.print(out);
  out << "singularities: " << s.singularity_count() << "; \xcf\x87=" << s.euler_characteristic()
      << " b=" << s.boundary_components() << " g=" << s.genus() << "\n";
  return Ok;
}

struct TraceArgs {
  std::string polygon;
  std::string point;
  std::string corner;
  std::string direction;
  std::string budget = "100";
  std::string svg;
};

int do_trace(const std::string& path, const TraceArgs& a, std::ostream& out) {
  HalfTranslationSurface s = open_surface(path);
  Vec2 d = parse_vec(a.direction, "--direction");
  if (d.is_zero()) throw UsageError("--direction must be nonzero");
  Rational budget = parse_budget(a.budget);
  Trajectory t;
  if (!a.corner.empty()) {
    auto colon = a.corner.rfind(':');
    if (colon == std::string::npos) throw UsageError("--corner must be polygon:vertex");
    auto poly = s.polygon_index(a.corner.substr(0, colon));
    if (!poly) throw UsageError("unknown polygon in --corner");
    std::size_t v = 0;
    try {
      v = std::stoul(a.corner.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--corner must be polygon:vertex");
    }
    if (v >= s.polygon(*poly).size()) throw UsageError("vertex index out of range in --corner");
    Germ g = s.make_germ(CornerRef{*poly, v}, primitive(d));
    t = shoot(s, g, budget);
  } else {
    if (a.polygon.empty() || a.point.empty()) throw UsageError("trace needs --corner or --polygon with --point");
    auto poly = s.polygon_index(a.polygon);
    if (!poly) throw UsageError("unknown polygon '" + a.polygon + "'");
    t = shoot(s, SurfacePoint{*poly, parse_vec(a.point, "--point")}, d, budget);
  }
  out << io::trajectory_lines(s, t);
  if (!a.svg.empty()) write_file(a.svg, render_svg(s, t));
  return t.termination == Termination::LengthBudget ? Undetermined : Ok;
}

int do_saddles(const std::string& path, const std::string& budget_text, unsigned jobs, std::ostream& out) {
  HalfTranslationSurface s = open_surface(path);
  auto scs = saddle_connections(s, parse_budget(budget_text), jobs);
  Table t({"#", "sq_length", "holonomy", "from", "to"});
  for (std::size_t i = 0; i < scs.size(); ++i)
    t.add({std::to_string(i), to_string(scs[i].sq_length), to_string(scs[i].holonomy), germ_name(s, scs[i].from),
           germ_name(s, scs[i].to)});
  t.print(out);
  out << "saddle connections: " << scs.size() << "\n";
  return Ok;
}

void print_cylinders(const DirectionClassification& c, std::ostream& out) {
  out << "direction " << to_string(c.direction.vec()) << ": " << to_string(c.outcome) << ", " << c.cylinders.size()
      << " cylinder(s)\n";
  Table t({"#", "circumference^2", "height", "area"});
  for (std::size_t i = 0; i < c.cylinders.size(); ++i)
    t.add({std::to_string(i), to_string(c.cylinders[i].circumference_sq), height_text(c.cylinders[i]),
           to_string(c.cylinders[i].area)});
  t.print(out);
  for (std::size_t i = 0; i < c.domains.size(); ++i)
    out << "domain " << i << ": area " << to_string(c.domains[i].area) << ", " << c.domains[i].boundary_saddles.size()
        << " boundary saddle connection(s), " << c.domains[i].boundary_edges.size() << " boundary edge(s), "
        << c.domains[i].open_rays.size() << " open ray(s)\n";
}

int do_cylinders(const std::string& path, const std::string& dir, const std::string& budget, const std::string& svg,
                 std::ostream& out) {
  HalfTranslationSurface s = open_surface(path);
  DirectionClassification c = cylinder_decomposition(s, parse_direction(dir), parse_budget(budget));
  print_cylinders(c, out);
  if (!svg.empty()) write_file(svg, render_svg(s, c));
  return c.outcome == Outcome::Undetermined ? Undetermined : Ok;
}

int do_ribbon(const std::string& path, const std::string& emit, std::ostream& out) {
  RibbonGraph g = io::load_graph(path);
  SurfaceInvariants inv = surface_invariants(g);
  ExceptionalKind k = is_exceptional(g);
  out << "exceptional: " << (k == ExceptionalKind::None ? "none" : to_string(k)) << "; \xcf\x87=" << inv.chi
      << " b=" << inv.boundary << " g=" << inv.genus << "\n";
  auto cycles = right_turn_cycles(g);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    out << "cycle " << i << " (length " << to_string(cycles[i].length) << "):";
    for (std::size_t h : cycles[i].half_edges) out << " " << g.name(h);
    out << "\n";
  }
  if (!emit.empty()) write_file(emit, io::to_json(build_surface_data(g)).dump(2) + "\n");
  return Ok;
}

std::string event_kind(IntersectionEvent::Kind k) {
  switch (k) {
    case IntersectionEvent::TransverseRegular: return "transverse";
    case IntersectionEvent::IsolatedSingular: return "isolated";
    case IntersectionEvent::SharedArc: return "shared-arc";
  }
  return "?";
}

void print_pattern(const HalfTranslationSurface& s, const IntersectionPattern& p, std::ostream& out) {
  if (p.same_image) out << "same image\n";
  Table t({"#", "kind", "where", "t1", "t2", "linked"});
  for (std::size_t i = 0; i < p.events.size(); ++i) {
    const auto& e = p.events[i];
    std::string where;
    if (e.kind == IntersectionEvent::TransverseRegular)
      where = s.polygon(e.point.polygon).id + to_string(e.point.coords);
    else if (e.kind == IntersectionEvent::IsolatedSingular)
      where = "z" + std::to_string(e.x1);
    else
      where = "z" + std::to_string(e.x1) + "->z" + std::to_string(e.x2) + " (" + std::to_string(e.arc_legs) +
              (e.opposite ? " legs, opposite)" : " legs)");
    t.add({std::to_string(i), event_kind(e.kind), where, to_string(e.t1), to_string(e.t2), e.linked ? "yes" : "no"});
  }
  t.print(out);
}

int do_link(const std::string& path, const std::string& g1, const std::string& g2, std::ostream& out) {
  HalfTranslationSurface s = open_surface(path);
  ClosedGeodesic a = io::load_geodesic(s, g1), b = io::load_geodesic(s, g2);
  IntersectionPattern p = intersection_pattern(a, b);
  out << (p.linked() ? "LINKED" : "NOT-LINKED") << "\n";
  print_pattern(s, p, out);
  return Ok;
}

std::string image_summary(const ImageGraph& g) {
  return std::to_string(g.vertices.size()) + " vertex(es), " + std::to_string(g.edges.size()) + " saddle connection(s)";
}

std::string leaf_list(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i : v) s += (s.empty() ? "" : ",") + std::to_string(i);
  return s;
}

int do_classify(const std::string& path, const std::string& family, const std::string& dir, const std::string& budget,
                std::ostream& out) {
  HalfTranslationSurface s = open_surface(path);
  LeafFamily f;
  int code = Ok;
  if (!dir.empty()) {
    if (!family.empty()) throw UsageError("give either a family file or --from-direction");
    DirectionClassification c = cylinder_decomposition(s, parse_direction(dir), parse_budget(budget));
    out << "direction " << to_string(c.direction.vec()) << ": " << to_string(c.outcome) << "\n";
    if (c.outcome == Outcome::Undetermined) code = Undetermined;
    f = family_from_direction(s, c);
  } else {
    if (family.empty()) throw UsageError("classify needs a family file or --from-direction");
    f = io::load_family(s, family);
  }
  FamilyReport rep = validate_family(s, f);
  out << "leaves: " << f.leaves.size() << " (reversals included)\n";
  if (rep.bound)
    out << "saddle connections: " << rep.bound->saddle_connections << " (bound " << rep.bound->bound << ")\n";
  if (!rep.ok()) {
    out << "INVALID FAMILY: " << rep.violations.size() << " violation(s)\n";
    for (const auto& v : rep.violations) out << "  " << v.code << ": " << v.message << "\n";
    return Invalid;
  }
  ComponentReport r = classify_components(s, f);
  Table t({"kind", "size", "support", "leaves"});
  for (const auto& c : r.cylindrical) {
    Fullness full = cylindrical_component_fullness(s, c);
    t.add({"cylindrical", std::to_string(c.leaves.size()),
           "circumference^2 " + to_string(c.cylinder.circumference_sq) + ", height " + height_text(c.cylinder) +
               (full.full ? ", full" : ""),
           leaf_list(c.leaves)});
  }
  for (const auto& c : r.graph_support)
    t.add({"graph", std::to_string(c.leaves.size()), image_summary(c.image), leaf_list(c.leaves)});
  for (const auto& c : r.periodic_pairs)
    t.add({"periodic-pair", std::to_string(c.leaves.size()), image_summary(c.image), leaf_list(c.leaves)});
  t.print(out);
  out << "components: " << r.component_count() << "; candidate minimal domains: " << r.candidate_minimal_domains.size()
      << "\n";
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on half-translation surfaces"};
  app.name("flatlam");
  app.require_subcommand(1, 1);
  app.fallthrough();
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for parallel searches")->check(CLI::Range(1u, 256u));

  std::string surface, file1, file2, direction, budget = "100", svg, emit;
  TraceArgs trace;

  auto* validate = app.add_subcommand("validate", "Check a surface file");
  validate->add_option("surface", surface)->required();
  auto* singular = app.add_subcommand("singularities", "List vertex classes and cone angles");
  singular->add_option("surface", surface)->required();
  auto* tr = app.add_subcommand("trace", "Trace a straight trajectory (JSON lines)");
  tr->add_option("surface", surface)->required();
  tr->add_option("--polygon", trace.polygon, "Start polygon id");
  tr->add_option("--point", trace.point, "Start point x,y in polygon coordinates");
  tr->add_option("--corner", trace.corner, "Start at a corner polygon:vertex");
  tr->add_option("--direction", trace.direction, "Direction p/q,r/s")->required();
  tr->add_option("--budget", trace.budget, "Squared length budget");
  tr->add_option("--svg", trace.svg, "Write an SVG drawing");
  auto* saddles = app.add_subcommand("saddles", "Enumerate saddle connections");
  saddles->add_option("surface", surface)->required();
  saddles->add_option("--budget", budget, "Squared length budget");
  auto* cyl = app.add_subcommand("cylinders", "Cylinder decomposition in a direction");
  cyl->add_option("surface", surface)->required();
  cyl->add_option("--direction", direction, "Direction p/q,r/s")->required();
  cyl->add_option("--budget", budget, "Squared length budget per separatrix");
  cyl->add_option("--svg", svg, "Write an SVG drawing");
  auto* ribbon = app.add_subcommand("ribbon", "Ribbon graph invariants");
  ribbon->add_option("graph", file1)->required();
  ribbon->add_option("--emit-surface", emit, "Write the built surface as JSON");
  auto* link = app.add_subcommand("link", "Linking test for two closed geodesics");
  link->add_option("surface", surface)->required();
  link->add_option("geodesic1", file1)->required();
  link->add_option("geodesic2", file2)->required();
  auto* classify = app.add_subcommand("classify", "Validate and decompose a leaf family");
  classify->add_option("surface", surface)->required();
  classify->add_option("family", file1);
  classify->add_option("--from-direction", direction, "Generate the family from a cylinder decomposition");
  classify->add_option("--budget", budget, "Squared length budget per separatrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "flatlam: " << e.what() << "\n" << app.help();
    return Usage;
  }
  // Reserved for randomized algorithms; the exact ones ignore it.
  if (const char* seed = std::getenv("FLATLAM_SEED")) (void)seed;

  try {
    if (*validate) return do_validate(surface, out);
    if (*singular) return do_singularities(surface, out);
    if (*tr) return do_trace(surface, trace, out);
    if (*saddles) return do_saddles(surface, budget, jobs, out);
    if (*cyl) return do_cylinders(surface, direction, budget, svg, out);
    if (*ribbon) return do_ribbon(file1, emit, out);
    if (*link) return do_link(surface, file1, file2, out);
    if (*classify) return do_classify(surface, file1, direction, budget, out);
  } catch (const UsageError& e) {
    err << "flatlam: " << e.what() << "\n" << app.help();
    return Usage;
  } catch (const ParseError& e) {
    err << "flatlam: " << e.what() << "\n";
    return DataError;
  } catch (const PointOutsideSurface& e) {
    err << "flatlam: " << e.what() << "\n";
    return Usage;
  } catch (const InvalidSurface& e) {
    out << "INVALID: " << e.report.violations.size() << " violation(s)\n";
    for (const auto& v : e.report.violations) out << "  " << v.code << ": " << v.message << "\n";
    return Invalid;
  } catch (const InvalidRibbonGraph& e) {
    out << "INVALID: " << e.what() << "\n";
    return Invalid;
  } catch (const std::exception& e) {
    err << "flatlam: internal error: " << e.what() << "\n";
    return Internal;
  }
  return Usage;
}

}  // namespace flatlam::cli
