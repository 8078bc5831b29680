#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "flatlam/lamination.hpp"
#include "square_tiled.hpp"

using namespace flatlam;
using fixtures::q;

namespace {

PathLeg unit_leg(const HalfTranslationSurface& s, CornerRef c, Vec2 d) { return PathLeg{s.make_germ(c, d), d}; }

ClosedGeodesic path_leaf(const HalfTranslationSurface& s, std::vector<PathLeg> legs) {
  GeodesicPath p;
  p.closed = true;
  p.legs = std::move(legs);
  return ClosedGeodesic::from_path(s, p);
}

ClosedGeodesic regular_leaf(const HalfTranslationSurface& s, std::size_t poly, Vec2 start, Vec2 d) {
  Trajectory t = shoot(s, SurfacePoint{poly, start}, d, 1000);
  EXPECT_EQ(t.termination, Termination::Closed);
  return ClosedGeodesic::from_trajectory(s, t);
}

LeafFamily family(std::vector<ClosedGeodesic> leaves) {
  LeafFamily f;
  f.leaves = std::move(leaves);
  return close_under_reversal(std::move(f));
}

std::size_t total_members(const ComponentReport& r) {
  std::size_t n = r.isolated.size();
  for (const auto& c : r.cylindrical) n += c.leaves.size();
  for (const auto& c : r.graph_support) n += c.leaves.size();
  for (const auto& c : r.periodic_pairs) n += c.leaves.size();
  return n;
}

}  // namespace

TEST(Lamination, ReversalClosure) {
  HalfTranslationSurface s(fixtures::l_surface());
  LeafFamily f = family({regular_leaf(s, 1, Vec2(q(3, 2), q(1, 2)), Vec2(1, 0))});
  ASSERT_EQ(f.leaves.size(), 2u);
  EXPECT_FALSE(same_leaf(f.leaves[0], f.leaves[1]));
  EXPECT_TRUE(same_leaf(f.leaves[1], f.leaves[0].reversed()));
  EXPECT_EQ(close_under_reversal(f).leaves.size(), 2u);

  LeafFamily half;
  half.leaves = {f.leaves[0]};
  FamilyReport rep = validate_family(s, half);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].code, "missing-reversal");
  EXPECT_TRUE(validate_family(s, f).ok());
}

TEST(Lamination, ParallelCoresFormOneCylinder) {
  HalfTranslationSurface s(fixtures::l_surface());
  // Three horizontal leaves inside the long cylinder through A and B.
  LeafFamily f = family({regular_leaf(s, 0, Vec2(q(1, 2), q(1, 4)), Vec2(1, 0)),
                         regular_leaf(s, 1, Vec2(q(4, 3), q(1, 2)), Vec2(1, 0)),
                         regular_leaf(s, 0, Vec2(q(1, 5), q(3, 4)), Vec2(1, 0))});
  EXPECT_TRUE(validate_family(s, f).ok());
  ComponentReport r = classify_components(s, f);
  ASSERT_EQ(r.cylindrical.size(), 1u);
  EXPECT_EQ(r.cylindrical[0].leaves.size(), 6u);
  EXPECT_EQ(r.cylindrical[0].cylinder.circumference_sq, 4);
  EXPECT_EQ(r.cylindrical[0].cylinder.area, 2);
  EXPECT_TRUE(r.graph_support.empty());
  EXPECT_TRUE(r.periodic_pairs.empty());
  EXPECT_TRUE(r.isolated.empty());
}

TEST(Lamination, TwoConnectionLeafIsGraphSupported) {
  HalfTranslationSurface s(fixtures::l_surface());
  LeafFamily f = family({path_leaf(s, {unit_leg(s, CornerRef{0, 0}, Vec2(1, 0)), unit_leg(s, CornerRef{1, 0}, Vec2(1, 0))})});
  EXPECT_TRUE(validate_family(s, f).ok());
  ComponentReport r = classify_components(s, f);
  ASSERT_EQ(r.graph_support.size(), 1u);
  EXPECT_EQ(r.graph_support[0].image.vertices.size(), 1u);
  EXPECT_EQ(r.graph_support[0].image.edges.size(), 2u);
  EXPECT_FALSE(r.graph_support[0].image.circle);
  EXPECT_EQ(r.graph_support[0].leaves.size(), 2u);
  EXPECT_TRUE(r.cylindrical.empty());
  EXPECT_TRUE(r.periodic_pairs.empty());
}

TEST(Lamination, SingleConnectionLoopIsPeriodicPair) {
  HalfTranslationSurface s(fixtures::l_surface());
  LeafFamily f = family({path_leaf(s, {unit_leg(s, CornerRef{2, 0}, Vec2(0, 1)), unit_leg(s, CornerRef{0, 0}, Vec2(0, 1))})});
  // vC followed by vA: a closed vertical loop of two connections through the
  // single cone, so the image is not a simple circle.
  ComponentReport r0 = classify_components(s, f);
  EXPECT_EQ(r0.graph_support.size(), 1u);

  LeafFamily g = family({path_leaf(s, {unit_leg(s, CornerRef{1, 0}, Vec2(1, 0))})});
  ASSERT_EQ(g.leaves.size(), 2u);
  EXPECT_TRUE(validate_family(s, g).ok());
  ComponentReport r = classify_components(s, g);
  ASSERT_EQ(r.periodic_pairs.size(), 1u);
  EXPECT_TRUE(r.periodic_pairs[0].image.circle);
  EXPECT_EQ(r.periodic_pairs[0].leaves.size(), 2u);
  EXPECT_TRUE(r.cylindrical.empty());
  EXPECT_TRUE(r.graph_support.empty());
}

TEST(Lamination, LinkedPairIsReported) {
  HalfTranslationSurface s(fixtures::torus());
  LeafFamily f = family({regular_leaf(s, 0, Vec2(q(1, 2), q(1, 3)), Vec2(1, 0)),
                         regular_leaf(s, 0, Vec2(q(1, 3), q(1, 2)), Vec2(0, 1))});
  FamilyReport rep = validate_family(s, f);
  EXPECT_FALSE(rep.ok());
  auto linked = std::count_if(rep.violations.begin(), rep.violations.end(), [](const Violation& v) { return v.code == "linked-pair"; });
  EXPECT_EQ(linked, 4);
  EXPECT_TRUE(std::any_of(rep.violations.begin(), rep.violations.end(), [](const Violation& v) { return v.code == "family-is-linked"; }));
}

TEST(Lamination, SelfLinkedLeafIsReported) {
  HalfTranslationSurface s(fixtures::l_surface());
  ClosedGeodesic eight = path_leaf(s, {unit_leg(s, CornerRef{0, 0}, Vec2(1, 0)),
                                       PathLeg{s.make_germ(CornerRef{1, 1}, Vec2(-1, 0)), Vec2(-1, 0)}});
  FamilyReport rep = validate_family(s, family({eight}));
  EXPECT_TRUE(std::any_of(rep.violations.begin(), rep.violations.end(), [](const Violation& v) { return v.code == "self-linked"; }));
}

TEST(Lamination, DecompositionCoresGiveOneComponentPerCylinder) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto [r, u] = square_tiled::random_connected(rng, 2 + trial % 4);
    HalfTranslationSurface s(square_tiled::build(r, u));
    for (Vec2 d : {Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)}) {
      DirectionClassification c = cylinder_decomposition(s, Direction(d), 200);
      ASSERT_EQ(c.outcome, Outcome::Periodic);
      LeafFamily f = family_from_direction(s, c);
      ASSERT_EQ(f.leaves.size(), 2 * c.cylinders.size());
      EXPECT_TRUE(std::all_of(f.provenance.begin(), f.provenance.end(), [](Provenance p) { return p == Provenance::CylinderCore; }));
      FamilyReport rep = validate_family(s, f);
      EXPECT_TRUE(rep.ok()) << rep.violations.front().code;
      ComponentReport cr = classify_components(s, f);
      ASSERT_EQ(cr.cylindrical.size(), c.cylinders.size());
      Rational area = 0;
      for (const auto& k : cr.cylindrical) {
        area += k.cylinder.area;
        EXPECT_EQ(k.leaves.size(), 2u);
      }
      EXPECT_EQ(area, s.area());
      EXPECT_EQ(total_members(cr), f.leaves.size());
      ++checked;
    }
  }
  EXPECT_EQ(checked, 90);
}

TEST(Lamination, GroupingIgnoresInputOrder) {
  HalfTranslationSurface s(fixtures::l_surface());
  std::vector<ClosedGeodesic> leaves = {
      regular_leaf(s, 0, Vec2(q(1, 2), q(1, 4)), Vec2(1, 0)),
      regular_leaf(s, 2, Vec2(q(1, 2), q(3, 2)), Vec2(1, 0)),
      regular_leaf(s, 1, Vec2(q(4, 3), q(1, 2)), Vec2(1, 0)),
      path_leaf(s, {unit_leg(s, CornerRef{0, 0}, Vec2(1, 0)), unit_leg(s, CornerRef{1, 0}, Vec2(1, 0))}),
  };
  LeafFamily base = family(leaves);
  ComponentReport ref = classify_components(s, base);
  EXPECT_EQ(ref.cylindrical.size(), 2u);
  EXPECT_EQ(ref.graph_support.size(), 1u);
  EXPECT_EQ(total_members(ref), base.leaves.size());

  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> perm(base.leaves.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    LeafFamily f;
    for (std::size_t i : perm) f.leaves.push_back(base.leaves[i]);
    ComponentReport r = classify_components(s, f);
    ASSERT_EQ(r.cylindrical.size(), ref.cylindrical.size());
    for (std::size_t k = 0; k < r.cylindrical.size(); ++k) {
      EXPECT_TRUE(same_cylinder(r.cylindrical[k].cylinder, ref.cylindrical[k].cylinder));
      std::vector<std::size_t> mapped;
      for (std::size_t i : r.cylindrical[k].leaves) mapped.push_back(perm[i]);
      std::sort(mapped.begin(), mapped.end());
      EXPECT_EQ(mapped, ref.cylindrical[k].leaves);
    }
    ASSERT_EQ(r.graph_support.size(), 1u);
    EXPECT_EQ(r.graph_support[0].image, ref.graph_support[0].image);
  }
}

TEST(Lamination, Fullness) {
  HalfTranslationSurface s(fixtures::l_surface());
  LeafFamily f = family({regular_leaf(s, 0, Vec2(q(1, 2), q(1, 2)), Vec2(1, 0))});
  ComponentReport r = classify_components(s, f);
  ASSERT_EQ(r.cylindrical.size(), 1u);
  Fullness open = cylindrical_component_fullness(s, r.cylindrical[0]);
  EXPECT_FALSE(open.full);
  EXPECT_EQ(open.covered_height, 0);

  f.declared_full = {0};
  r = classify_components(s, f);
  Fullness full = cylindrical_component_fullness(s, r.cylindrical[0]);
  EXPECT_TRUE(full.full);
  EXPECT_EQ(full.covered_height, 1);
}

TEST(Lamination, CandidateDomainsAreForwarded) {
  HalfTranslationSurface s(fixtures::l_surface());
  DirectionClassification c = cylinder_decomposition(s, Direction(Vec2(1, 2)), 3);
  LeafFamily f = family_from_direction(s, c);
  ComponentReport r = classify_components(s, f);
  EXPECT_EQ(r.candidate_minimal_domains.size(), c.domains.size());
}
