#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "flatlam/flow.hpp"
#include "square_tiled.hpp"

using namespace flatlam;
using fixtures::q;

namespace {

std::multiset<std::pair<Rational, Rational>> shapes(const DirectionClassification& c) {
  std::multiset<std::pair<Rational, Rational>> out;
  for (const auto& cyl : c.cylinders) out.insert({cyl.circumference_sq, cyl.height_sq});
  return out;
}

}  // namespace

TEST(Flow, TorusPrimitiveDirections) {
  HalfTranslationSurface s(fixtures::torus());
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 0}, {0, 1}, {1, 1}, {2, 3}, {-3, 5}}) {
    auto c = cylinder_decomposition(s, Direction(Vec2(a, b)), 100);
    ASSERT_EQ(c.outcome, Outcome::Periodic) << a << "," << b;
    ASSERT_EQ(c.cylinders.size(), 1u);
    const Cylinder& cyl = c.cylinders[0];
    EXPECT_EQ(cyl.area, 1);
    EXPECT_EQ(cyl.circumference_sq, a * a + b * b);
    EXPECT_EQ(cyl.height_sq, q(1, a * a + b * b));
    EXPECT_TRUE(cyl.top.empty());
  }
}

TEST(Flow, TorusBudgetTooSmall) {
  HalfTranslationSurface s(fixtures::torus());
  auto c = cylinder_decomposition(s, Direction(Vec2(3, 5)), 10);
  EXPECT_EQ(c.outcome, Outcome::Undetermined);
  EXPECT_TRUE(c.cylinders.empty());
}

TEST(Flow, LHorizontal) {
  HalfTranslationSurface s(fixtures::l_surface());
  auto c = cylinder_decomposition(s, Direction(Vec2(1, 0)), 10);
  EXPECT_EQ(c.outcome, Outcome::Periodic);
  EXPECT_EQ(c.diagram.separatrices.size(), 6u);
  EXPECT_EQ(c.diagram.closed.size(), 3u);
  ASSERT_EQ(c.cylinders.size(), 2u);
  EXPECT_EQ(c.cylinders[0].circumference_sq, 1);
  EXPECT_EQ(c.cylinders[0].area, 1);
  EXPECT_EQ(c.cylinders[1].circumference_sq, 4);
  EXPECT_EQ(c.cylinders[1].area, 2);
  EXPECT_EQ(c.cylinders[1].height(), Rational(1));
  // The long cylinder sees the connection across B on both of its sides.
  EXPECT_EQ(c.cylinders[0].top.size(), 1u);
  EXPECT_EQ(c.cylinders[0].bottom.size(), 1u);
  EXPECT_EQ(c.cylinders[1].top.size(), 2u);
  EXPECT_EQ(c.cylinders[1].bottom.size(), 2u);
  std::set<std::pair<Germ, Vec2>> shared;
  for (const auto& sc : c.cylinders[1].top) shared.insert({sc.from, sc.holonomy});
  int both = 0;
  for (const auto& sc : c.cylinders[1].bottom) both += shared.count({sc.from, sc.holonomy});
  EXPECT_EQ(both, 1);
}

TEST(Flow, LDiagonalIsPeriodic) {
  HalfTranslationSurface s(fixtures::l_surface());
  auto c = cylinder_decomposition(s, Direction(Vec2(1, 1)), 20);
  ASSERT_EQ(c.outcome, Outcome::Periodic);
  Rational total = 0;
  for (const auto& cyl : c.cylinders) total += cyl.area;
  EXPECT_EQ(total, 3);
}

TEST(Flow, SmallBudgetLeavesOpenRays) {
  HalfTranslationSurface s(fixtures::l_surface());
  auto c = cylinder_decomposition(s, Direction(Vec2(5, 8)), 4);
  EXPECT_NE(c.outcome, Outcome::Periodic);
  EXPECT_FALSE(c.diagram.open_rays.empty());
  for (const auto& r : c.diagram.open_rays) EXPECT_LE(r.traced_sq_length, 4);
}

TEST(Flow, SquareTiledHorizontalAndVerticalMatchOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    auto [r, u] = square_tiled::random_connected(rng, 2 + trial % 5);
    HalfTranslationSurface s(square_tiled::build(r, u));
    for (bool vertical : {false, true}) {
      auto expect = vertical ? square_tiled::horizontal_cylinders(u, r) : square_tiled::horizontal_cylinders(r, u);
      std::multiset<std::pair<Rational, Rational>> want;
      for (auto [len, h] : expect) want.insert({Rational(len * len), Rational(h * h)});
      auto c = cylinder_decomposition(s, Direction(vertical ? Vec2(0, 1) : Vec2(1, 0)), 64);
      ASSERT_EQ(c.outcome, Outcome::Periodic) << trial;
      EXPECT_EQ(shapes(c), want) << trial << (vertical ? " vertical" : " horizontal");
    }
  }
}

TEST(Flow, AreaSumsToSurfaceAreaInSlopedDirections) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    auto [r, u] = square_tiled::random_connected(rng, 3 + trial % 3);
    HalfTranslationSurface s(square_tiled::build(r, u));
    for (Vec2 d : {Vec2(1, 1), Vec2(1, -2), Vec2(2, 1)}) {
      auto c = cylinder_decomposition(s, Direction(d), 400);
      ASSERT_EQ(c.outcome, Outcome::Periodic);
      Rational total = 0;
      for (const auto& cyl : c.cylinders) {
        total += cyl.area;
        EXPECT_EQ(cyl.area * cyl.area, cyl.height_sq * cyl.circumference_sq);
      }
      EXPECT_EQ(total, s.area());
    }
  }
}

TEST(Flow, MaximalCylinderOfAnyLeaf) {
  HalfTranslationSurface s(fixtures::l_surface());
  for (Rational y : {q(1, 2), q(1, 3), q(3, 2)}) {
    std::size_t poly = y < 1 ? 0 : 2;
    Trajectory t = shoot(s, SurfacePoint{poly, Vec2(q(1, 5), y)}, Vec2(1, 0), 100);
    ASSERT_EQ(t.termination, Termination::Closed);
    Cylinder c = maximal_cylinder(s, t);
    EXPECT_EQ(c.height(), Rational(1));
    EXPECT_EQ(c.area, y < 1 ? 2 : 1);
    Cylinder again = maximal_cylinder(s, c.core_curve);
    EXPECT_TRUE(same_cylinder(c, again));
  }
}

TEST(Flow, MaximalCylinderErrors) {
  HalfTranslationSurface s(fixtures::l_surface());
  Trajectory through = shoot(s, SurfacePoint{0, Vec2(q(1, 2), 0)}, Vec2(1, 0), 100);
  EXPECT_THROW(maximal_cylinder(s, through), PassesThroughSingularity);
  Trajectory open = shoot(s, SurfacePoint{0, Vec2(q(1, 2), q(1, 3))}, Vec2(5, 8), 1);
  EXPECT_THROW(maximal_cylinder(s, open), NotPeriodic);
}

TEST(Flow, ConstantDirectionTail) {
  HalfTranslationSurface s(fixtures::torus());
  Trajectory t = shoot(s, SurfacePoint{0, Vec2(q(1, 2), q(1, 3))}, Vec2(2, 4), 100);
  auto d = constant_direction_tail(s, t);
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, Direction(Vec2(1, 2)));
}

TEST(Flow, HalfTranslationRectanglesAreaConserved) {
  std::mt19937 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 10; ++trial) {
    SurfaceData d = fixtures::random_rectangles(rng, 3 + trial % 2, 1, q(1, 2));
    if (!validate_surface(d).ok()) continue;
    HalfTranslationSurface s(d);
    for (Vec2 dir : {Vec2(1, 0), Vec2(0, 1)}) {
      auto c = cylinder_decomposition(s, Direction(dir), 100);
      ASSERT_EQ(c.outcome, Outcome::Periodic);
      Rational total = 0;
      for (const auto& cyl : c.cylinders) total += cyl.area;
      EXPECT_EQ(total, s.area());
    }
    ++checked;
  }
  EXPECT_EQ(checked, 10);
}

TEST(Flow, AnnulusWithBoundary) {
  SurfaceData d;
  d.polygons = {fixtures::rect("A", 0, 0, 2, 1)};
  d.gluings = {fixtures::tr(0, 1, 0, 3)};
  HalfTranslationSurface s(d);
  auto c = cylinder_decomposition(s, Direction(Vec2(1, 0)), 10);
  ASSERT_EQ(c.outcome, Outcome::Periodic);
  ASSERT_EQ(c.cylinders.size(), 1u);
  EXPECT_EQ(c.cylinders[0].area, 2);
  EXPECT_EQ(c.cylinders[0].top_edges.size(), 1u);
  EXPECT_EQ(c.cylinders[0].bottom_edges.size(), 1u);
  auto v = cylinder_decomposition(s, Direction(Vec2(0, 1)), 10);
  EXPECT_NE(v.outcome, Outcome::Periodic);
}
