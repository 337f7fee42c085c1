#include <gtest/gtest.h>

#include <random>

#include "dodeca/geometry.hpp"

using namespace dodeca;

namespace {

Point pt(long x, long y) { return {QS3(x), QS3(y)}; }
Point ptq(const char* x, const char* y) { return {QS3::parse(x), QS3::parse(y)}; }
Region unit_square() { return Region::polygon({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}); }
Region quadrant() { return Region::unbounded({pt(0, 0)}, pt(0, 1), pt(1, 0)); }

Region dodecagon() {
  std::vector<Point> v;
  for (int k = 0; k < 12; ++k) v.push_back(AffMap::rotation(k)(pt(2, 0)));
  return Region::polygon(v);
}

}  // namespace

TEST(Geometry, ClassifyPoint) {
  EXPECT_EQ(classify_point(unit_square(), ptq("1/2", "1/2")), Location::interior);
  EXPECT_EQ(classify_point(unit_square(), ptq("0", "1/2")), Location::boundary);
  EXPECT_EQ(classify_point(unit_square(), pt(2, 0)), Location::exterior);
  EXPECT_EQ(classify_point(quadrant(), pt(5, 5)), Location::interior);
  EXPECT_EQ(classify_point(quadrant(), pt(5, 0)), Location::boundary);
  EXPECT_EQ(classify_point(quadrant(), pt(-1, 5)), Location::exterior);
}

TEST(Geometry, SplitRegion) {
  auto halves = split_region(unit_square(), Line::make(1, 0, QS3::parse("1/2")));
  ASSERT_EQ(halves.size(), 2u);
  for (const auto& h : halves) EXPECT_EQ(area(h), QS3(dodeca::make_rat(1, 2)));
  EXPECT_EQ(split_region(unit_square(), Line::make(1, 0, 2)).size(), 1u);
  auto parts = split_region(quadrant(), Line::make(1, 1, 1));
  ASSERT_EQ(parts.size(), 2u);
  int bounded = 0;
  for (const auto& p : parts) bounded += p.bounded();
  EXPECT_EQ(bounded, 1);
}

TEST(Geometry, SplitNonconvex) {
  // A U shape cut across both arms gives three pieces.
  Region u = Region::polygon({pt(0, 0), pt(3, 0), pt(3, 3), pt(2, 3), pt(2, 1), pt(1, 1), pt(1, 3), pt(0, 3)});
  auto parts = split_region(u, Line::make(0, 1, 2));
  EXPECT_EQ(parts.size(), 3u);
  EXPECT_EQ(total_area(parts), area(u));
  EXPECT_FALSE(u.convex());
  EXPECT_EQ(total_area(convex_decomposition(u)), area(u));
}

TEST(Geometry, ApplyMap) {
  EXPECT_EQ(apply_map(AffMap::identity(), unit_square()), unit_square());
  EXPECT_EQ(apply_map(AffMap::rotation(6), unit_square()),
            Region::polygon({pt(-1, -1), pt(0, -1), pt(0, 0), pt(-1, 0)}));
  Region moved = apply_map(AffMap::translation(pt(1, 0)), quadrant());
  EXPECT_EQ(moved.vertices().front(), pt(1, 0));
  EXPECT_EQ(*moved.entry_ray(), *quadrant().entry_ray());
  // Reflection reverses orientation; the result must still be counterclockwise.
  Region mirrored = apply_map(AffMap::linear(-1, 0, 0, 1), unit_square());
  EXPECT_EQ(area(mirrored), QS3(1));
}

TEST(Geometry, RegionEqual) {
  EXPECT_TRUE(region_equal(unit_square(), Region::polygon({pt(1, 1), pt(0, 1), pt(0, 0), pt(1, 0)})));
  EXPECT_FALSE(region_equal(unit_square(), apply_map(AffMap::translation(pt(1, 0)), unit_square())));
  EXPECT_FALSE(region_equal(Region::polygon({pt(0, 0), pt(1, 0), pt(0, 1)}), quadrant()));
}

TEST(Geometry, AreaAndCentroid) {
  auto [a, c] = area_and_centroid(unit_square());
  EXPECT_EQ(a, QS3(1));
  EXPECT_EQ(c, ptq("1/2", "1/2"));
  auto [a2, c2] = area_and_centroid(Region::polygon({pt(0, 0), pt(1, 0), pt(0, 1)}));
  EXPECT_EQ(a2, QS3(dodeca::make_rat(1, 2)));
  EXPECT_EQ(c2, ptq("1/3", "1/3"));
  auto [a3, c3] = area_and_centroid(dodecagon());
  EXPECT_EQ(a3, QS3(12));
  EXPECT_EQ(c3, pt(0, 0));
  EXPECT_THROW(area(quadrant()), DomainError);
}

TEST(Geometry, RandomizedSplitAndIsometry) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-6, 6);
  std::uniform_int_distribution<int> k(0, 11);
  Region base = dodecagon();
  for (int i = 0; i < 1000; ++i) {
    QS3 a(dodeca::make_rat(c(rng), 1), dodeca::make_rat(c(rng), 2));
    QS3 b(dodeca::make_rat(c(rng), 2), dodeca::make_rat(c(rng), 3));
    if (a.is_zero() && b.is_zero()) continue;
    Line l = Line::make(a, b, QS3(dodeca::make_rat(c(rng), 4)));
    auto parts = split_region(base, l);
    ASSERT_EQ(total_area(parts), QS3(12));
    AffMap f = AffMap::rotation_about(ptq("1/2", "1/3*s3"), k(rng));
    Region img = apply_map(f, parts.front());
    ASSERT_EQ(area(img), area(parts.front()));
    Point p = interior_point(parts.front());
    ASSERT_EQ(classify_point(parts.front(), p), Location::interior);
    ASSERT_EQ(classify_point(img, f(p)), Location::interior);
  }
}

TEST(Geometry, MergeRegions) {
  // Two unit squares sharing an edge, plus an L-shaped union with a T-junction.
  Region a = Region::polygon({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
  Region b = Region::polygon({pt(1, 0), pt(2, 0), pt(2, 1), pt(1, 1)});
  auto ab = merge_regions({a, b});
  ASSERT_EQ(ab.size(), 1u);
  EXPECT_EQ(ab[0], Region::polygon({pt(0, 0), pt(2, 0), pt(2, 1), pt(0, 1)}));
  Region c = Region::polygon({pt(0, 1), pt(2, 1), pt(2, 2), pt(0, 2)});
  Region d = Region::polygon({pt(2, 0), pt(3, 0), pt(3, 1), pt(2, 1)});
  auto l = merge_regions({a, c, d});
  ASSERT_EQ(l.size(), 2u);  // d only touches c at a corner
  auto all = merge_regions({a, b, c});
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], Region::polygon({pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)}));
  // L shape: nonconvex result.
  auto el = merge_regions({a, b, Region::polygon({pt(0, 1), pt(1, 1), pt(1, 2), pt(0, 2)})});
  ASSERT_EQ(el.size(), 1u);
  EXPECT_FALSE(el[0].convex());
  EXPECT_EQ(area(el[0]), QS3(3));
}

TEST(Geometry, ConvexRelations) {
  Region a = unit_square();
  Region b = apply_map(AffMap::translation(pt(1, 0)), a);
  Region inner = Region::polygon({ptq("1/4", "1/4"), ptq("3/4", "1/4"), ptq("1/2", "3/4")});
  EXPECT_TRUE(disjoint_convex(a, b));
  EXPECT_FALSE(disjoint_convex(a, inner));
  EXPECT_TRUE(inside_convex_closure(inner, a));
  EXPECT_TRUE(inside_convex_closure(a, a));
  EXPECT_FALSE(inside_convex_closure(b, a));
  EXPECT_FALSE(disjoint_convex(quadrant(), a));
  EXPECT_TRUE(inside_convex_closure(a, quadrant()));
}
