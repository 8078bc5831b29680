#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "fixtures.hpp"
#include "flatlam/cli.hpp"
#include "flatlam/io.hpp"
#include "flatlam/svg.hpp"
#include "ribbon_gen.hpp"

using namespace flatlam;

namespace {

const std::string kDir = FLATLAM_FIXTURES;

std::string fx(const std::string& name) { return kDir + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "flatlam");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("flatlam_test_" + name)).string();
}

}  // namespace

TEST(Io, SurfaceRoundTrip) {
  for (const char* name : {"torus.json", "L.json", "bad_gluing.json", "pillowcase_invalid.json"}) {
    SurfaceData d = io::load_surface(fx(name));
    EXPECT_EQ(io::surface_from_json(io::to_json(d)), d) << name;
    EXPECT_EQ(io::surface_from_json(io::json::parse(io::to_json(d).dump())), d) << name;
  }
  EXPECT_EQ(io::load_surface(fx("L.json")), fixtures::l_surface());
  EXPECT_EQ(io::load_surface(fx("torus.json")), fixtures::torus());
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    SurfaceData d = fixtures::random_rectangles(rng, 1 + i % 4, fixtures::q(3, 2), fixtures::q(-1, 7) + 1);
    EXPECT_EQ(io::surface_from_json(io::json::parse(io::to_json(d).dump())), d);
  }
}

TEST(Io, ParseErrorsNameTheLocation) {
  try {
    io::load_surface(fx("malformed.json"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed.json:2:"), std::string::npos) << e.what();
  }
  auto bad = io::json::parse(R"({"polygons": [{"id": "T", "vertices": [["0", "0"], ["1", "x"]]}], "gluings": []})");
  try {
    io::surface_from_json(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("/polygons/0/vertices/1/1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::surface_from_json(io::json::parse(R"({"polygons": []})")), ParseError);
  EXPECT_THROW(io::surface_from_json(io::json::parse(
                   R"({"polygons": [], "gluings": [{"a": ["Z", 0], "b": ["Z", 1], "kind": "translation"}]})")),
               ParseError);
  EXPECT_THROW(io::load_surface(fx("does_not_exist.json")), ParseError);
}

TEST(Io, GraphRoundTrip) {
  std::mt19937 rng(9);
  for (int i = 0; i < 30; ++i) {
    RibbonGraph g = ribbon_gen::random_graph(rng, 8);
    RibbonGraph h = io::graph_from_json(io::json::parse(io::to_json(g).dump()));
    EXPECT_EQ(io::to_json(h), io::to_json(g));
    EXPECT_EQ(surface_invariants(h), surface_invariants(g));
  }
  RibbonGraph theta = io::load_graph(fx("theta_flat.json"));
  EXPECT_EQ(is_exceptional(theta), ExceptionalKind::FlatTheta);
}

TEST(Io, GeodesicRoundTrip) {
  HalfTranslationSurface l(io::load_surface(fx("L.json")));
  LeafFamily f = io::load_family(l, fx("L_family_cores.json"));
  ASSERT_EQ(f.leaves.size(), 6u);
  EXPECT_EQ(f.declared_full, (std::set<std::size_t>{1, 4}));
  for (const auto& leaf : f.leaves) {
    ClosedGeodesic back = io::geodesic_from_json(l, io::json::parse(io::to_json(l, leaf).dump()));
    EXPECT_TRUE(same_leaf(back, leaf));
  }
  LeafFamily again = io::family_from_json(l, io::to_json(l, f));
  EXPECT_EQ(again.leaves.size(), f.leaves.size());
  EXPECT_EQ(again.declared_full, f.declared_full);
}

TEST(Io, ClosureCertificateIsChecked) {
  HalfTranslationSurface t(fixtures::torus());
  auto good = io::json::parse(R"({"start": {"polygon": "T", "point": ["1/2", "1/3"]}, "direction": ["1", "0"], "period": [{"edge": 1}]})");
  EXPECT_NO_THROW(io::geodesic_from_json(t, good));
  auto wrong = good;
  wrong["period"] = io::json::parse(R"([{"edge": 0}])");
  EXPECT_THROW(io::geodesic_from_json(t, wrong), ParseError);
  auto longer = good;
  longer["period"] = io::json::parse(R"([{"edge": 1}, {"edge": 1}])");
  EXPECT_THROW(io::geodesic_from_json(t, longer), ParseError);

  HalfTranslationSurface l(fixtures::l_surface());
  auto open = io::json::parse(R"({"start": {"polygon": "A", "point": ["0", "0"]}, "direction": ["1", "1"], "period": []})");
  EXPECT_THROW(io::geodesic_from_json(l, open), ParseError);
  auto not_geodesic = io::json::parse(R"({"legs": [{"corner": ["A", 0], "holonomy": ["1", "0"]}, {"corner": ["A", 1], "holonomy": ["-1", "0"]}]})");
  EXPECT_THROW(io::geodesic_from_json(l, not_geodesic), ParseError);
}

TEST(Io, TrajectoryLines) {
  HalfTranslationSurface t(fixtures::torus());
  Trajectory tr = shoot(t, SurfacePoint{0, Vec2(0, fixtures::q(1, 2))}, Vec2(1, 1), 10);
  std::string text = io::trajectory_lines(t, tr);
  std::istringstream in(text);
  std::string line;
  std::vector<io::json> rows;
  while (std::getline(in, line)) rows.push_back(io::json::parse(line));
  ASSERT_EQ(rows.size(), tr.segments.size() + 1);
  EXPECT_EQ(rows[0]["polygon"], "T");
  EXPECT_EQ(rows[0]["from"], io::json::parse(R"(["0", "1/2"])"));
  EXPECT_EQ(rows[0]["holonomy"], io::json::parse(R"(["1/2", "1/2"])"));
  EXPECT_EQ(rows.back()["termination"], "Closed");
  EXPECT_EQ(rows.back()["sq_length"], "2");
}

TEST(Svg, TorusDiagonal) {
  HalfTranslationSurface t(fixtures::torus());
  Trajectory tr = shoot(t, SurfacePoint{0, Vec2(0, fixtures::q(1, 2))}, Vec2(1, 1), 10);
  std::string svg = render_svg(t, tr);
  std::regex path_line("<line class=\"path\"");
  auto n = std::distance(std::sregex_iterator(svg.begin(), svg.end(), path_line), std::sregex_iterator());
  EXPECT_EQ(n, static_cast<long>(tr.segments.size()));
  EXPECT_NE(svg.find("x1=\"0.000000000000\" y1=\"0.500000000000\""), std::string::npos);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Svg, EmptyTrajectoryHasAxesOnly) {
  HalfTranslationSurface t(fixtures::torus());
  Trajectory tr = shoot(t, SurfacePoint{0, Vec2(fixtures::q(1, 2), fixtures::q(1, 2))}, Vec2(1, 0), fixtures::q(1, 100));
  ASSERT_TRUE(tr.segments.empty());
  std::string svg = render_svg(t, tr);
  EXPECT_EQ(svg.find("class=\"path\""), std::string::npos);
  std::regex axis("<line class=\"axis\"");
  EXPECT_EQ(std::distance(std::sregex_iterator(svg.begin(), svg.end(), axis), std::sregex_iterator()), 2);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
}

TEST(Svg, DecompositionBands) {
  HalfTranslationSurface l(fixtures::l_surface());
  DirectionClassification c = cylinder_decomposition(l, Direction(Vec2(1, 0)), 10);
  std::string svg = render_svg(l, c);
  EXPECT_NE(svg.find("id=\"cylinder-0\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"cylinder-1\""), std::string::npos);
  EXPECT_EQ(svg.find("id=\"cylinder-2\""), std::string::npos);
  // Band pieces tile the surface.
  Rational area = 0;
  for (const auto& cyl : c.cylinders)
    for (const auto& r : cyl.regions) {
      Polygon p{"", r.vertices};
      area += p.signed_area();
    }
  EXPECT_EQ(area, 3);
}

TEST(Cli, Validate) {
  Result r = run_cli({"validate", fx("torus.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "OK: 0 singularities, \xcf\x87=0\n");
  r = run_cli({"validate", fx("bad_gluing.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("vector-mismatch"), std::string::npos);
  r = run_cli({"validate", fx("malformed.json")});
  EXPECT_EQ(r.code, 65);
  EXPECT_NE(r.err.find("malformed.json:2:"), std::string::npos);
  r = run_cli({"singularities", fx("pillowcase_invalid.json")});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 64);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 64);
  EXPECT_EQ(run_cli({"cylinders", fx("L.json")}).code, 64);
  Result r = run_cli({"cylinders", fx("L.json"), "--direction", "1"});
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run_cli({"saddles", fx("L.json"), "--budget", "-1"}).code, 64);
  EXPECT_EQ(run_cli({"trace", fx("torus.json"), "--direction", "1,0"}).code, 64);
  EXPECT_EQ(run_cli({"trace", fx("torus.json"), "--polygon", "T", "--point", "5,5", "--direction", "1,0"}).code, 64);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, Cylinders) {
  Result r = run_cli({"cylinders", fx("L.json"), "--direction", "1,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "direction (1,0): Periodic, 2 cylinder(s)\n"
            "#  circumference^2  height  area\n"
            "0  1                1       1\n"
            "1  4                1       2\n");
  r = run_cli({"cylinders", fx("L.json"), "--direction", "1,2", "--budget", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("Undetermined"), std::string::npos);
  std::string svg = temp_path("cyl.svg");
  r = run_cli({"cylinders", fx("L.json"), "--direction", "1,1", "--svg", svg});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(slurp(svg).find("id=\"cylinder-0\""), std::string::npos);
}

TEST(Cli, Ribbon) {
  Result r = run_cli({"ribbon", fx("theta_flat.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "exceptional: FlatTheta; \xcf\x87=-1 b=3 g=0");
  std::string out = temp_path("theta_surface.json");
  r = run_cli({"ribbon", fx("theta_twisted.json"), "--emit-surface", out});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "exceptional: none; \xcf\x87=-1 b=1 g=1");
  HalfTranslationSurface s(io::load_surface(out));
  EXPECT_EQ(s.genus(), 1);
  EXPECT_EQ(s.boundary_components(), 1);
  r = run_cli({"validate", out});
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, LinkAndClassify) {
  Result r = run_cli({"link", fx("torus.json"), fx("torus_h.json"), fx("torus_v.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 7), "LINKED\n");
  r = run_cli({"link", fx("torus.json"), fx("torus_h.json"), fx("torus_h.json")});
  EXPECT_EQ(r.out.substr(0, 11), "NOT-LINKED\n");
  r = run_cli({"classify", fx("L.json"), fx("L_family_cores.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("components: 3"), std::string::npos);
  EXPECT_NE(r.out.find("full"), std::string::npos);
  r = run_cli({"classify", fx("L.json"), fx("L_family_linked.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("linked-pair"), std::string::npos);
  r = run_cli({"classify", fx("L.json"), "--from-direction", "0,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("components: 2"), std::string::npos);
  EXPECT_EQ(run_cli({"classify", fx("L.json")}).code, 64);
}

TEST(Cli, GoldenOutputs) {
  struct Case {
    std::vector<std::string> args;
    const char* golden;
  };
  std::vector<Case> cases = {
      {{"singularities", fx("L.json")}, "golden/L_singularities.txt"},
      {{"saddles", fx("L.json"), "--budget", "2"}, "golden/L_saddles_2.txt"},
      {{"cylinders", fx("L.json"), "--direction", "1,1"}, "golden/L_cylinders_1_1.txt"},
      {{"trace", fx("L.json"), "--polygon", "A", "--point", "0,1/3", "--direction", "2,1"}, "golden/L_trace_2_1.txt"},
      {{"classify", fx("L.json"), fx("L_family_cores.json")}, "golden/L_classify_cores.txt"},
  };
  for (const auto& c : cases) {
    Result a = run_cli(c.args), b = run_cli(c.args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, slurp(fx(c.golden))) << c.golden;
  }
}

TEST(Cli, JobsDoNotChangeOutput) {
  Result one = run_cli({"saddles", fx("L.json"), "--budget", "8"});
  Result four = run_cli({"--jobs", "4", "saddles", fx("L.json"), "--budget", "8"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
}
