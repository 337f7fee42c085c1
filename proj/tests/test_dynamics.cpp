#include <gtest/gtest.h>

#include <set>

#include "dodeca/dynamics.hpp"
#include "dodeca/shape.hpp"
#include "dodeca/similarity.hpp"

using namespace dodeca;

namespace {

const WedgeSystem& sys() { return standard_system(); }

const QS3 kHalf = QS3(make_rat(1, 2));
const QS3 kCos150 = QS3(Rat(0), make_rat(-1, 2));  // -sqrt3/2

Component base(int i) { return find_periodic_component(sys(), sys().O[i]); }

bool all_angles(const Region& r, const QS3& c) {
  for (std::size_t i = 0; i < r.vertices().size(); ++i)
    if (!angle_cos_is(r, i, c)) return false;
  return true;
}

// Sides parallel to one of the six side directions of the table.
bool table_slopes(const Region& r) {
  const auto& A = sys().table.A;
  const auto& v = r.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec e = v[(i + 1) % v.size()] - v[i];
    bool ok = false;
    for (int k = 0; k < 6; ++k) ok = ok || parallel(e, A[k + 1] - A[k]);
    if (!ok) return false;
  }
  return true;
}

std::size_t count_sides(const std::vector<ReturnPiece>& ps, std::size_t n) {
  std::size_t c = 0;
  for (const auto& p : ps) c += p.source.vertices().size() == n;
  return c;
}

std::size_t count_nonconvex(const std::vector<ReturnPiece>& ps) {
  std::size_t c = 0;
  for (const auto& p : ps) c += !p.source.convex();
  return c;
}

}  // namespace

TEST(Components, BaseShapes) {
  const auto& w = sys();
  Region w1 = base(1).region, w2 = base(2).region, w3 = base(3).region, w4 = base(4).region;
  ASSERT_EQ(w1.vertices().size(), 12u);
  EXPECT_TRUE(equilateral(w1));
  EXPECT_TRUE(all_angles(w1, kCos150));
  EXPECT_TRUE(inscribed(w1, w.piece(1)));

  ASSERT_EQ(w2.vertices().size(), 6u);
  EXPECT_TRUE(equilateral(w2));
  std::size_t ip = vertex_index(w2, w.P[3]);
  std::size_t iq = vertex_index(w2, w.Q[2]);
  ASSERT_LT(ip, 6u);
  ASSERT_LT(iq, 6u);
  EXPECT_EQ((ip + 3) % 6, iq);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(angle_cos_is(w2, i, (i % 2 == ip % 2) ? QS3(0) : kCos150));

  ASSERT_EQ(w3.vertices().size(), 8u);
  EXPECT_TRUE(equilateral(w3));
  std::size_t i3 = vertex_index(w3, w.Q[3]);
  ASSERT_LT(i3, 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(angle_cos_is(w3, i, (i % 2 == i3 % 2) ? -kHalf : kCos150));

  ASSERT_EQ(w4.vertices().size(), 12u);
  EXPECT_TRUE(equilateral(w4));
  EXPECT_TRUE(all_angles(w4, kCos150));
  EXPECT_TRUE(inscribed(w4, w.piece(4)));

  for (const auto& r : {w1, w2, w3, w4}) {
    EXPECT_TRUE(r.convex());
    EXPECT_TRUE(table_slopes(r));
  }
}

TEST(Components, PeriodsAndIdempotence) {
  const auto& w = sys();
  const std::size_t expect_l[] = {0, 5, 4, 3, 2, 1};
  const std::size_t expect_t[] = {0, 12, 6, 4, 3, 12};
  for (int i = 1; i <= 5; ++i) {
    Component c = base(i);
    EXPECT_EQ(c.per_tprime, 1u);
    EXPECT_EQ(static_cast<std::size_t>(c.rotation_l), expect_l[i]);
    EXPECT_EQ(c.center, w.O[i]);
    auto per = component_periods(c);
    EXPECT_EQ(per.t_component, expect_t[i]);
    // The simulation oracle agrees with the period formula at the centre.
    EXPECT_EQ(t_period(w.table, c.center, 100), per.t_component);
    Component again = find_periodic_component(w, interior_point(c.region));
    EXPECT_EQ(again.region, c.region);
    Point off = QS3(make_rat(3, 4)) * c.center + QS3(make_rat(1, 4)) * c.region.vertices().front();
    EXPECT_EQ(tprime_period(w, off, 100), per.tprime_other);
  }
  auto p4 = component_periods(base(4));
  EXPECT_TRUE(p4.centrally_symmetric);
  EXPECT_EQ(p4.t_other, 6u);
}

TEST(Components, BoundarySeedIsReported) {
  const auto& w = sys();
  EXPECT_THROW(find_periodic_component(w, w.Q[3]), DomainError);
  EXPECT_THROW(find_periodic_component(w, w.table.A[0]), DomainError);
  Point on_cut = QS3(kHalf) * (w.P[3] + w.Q[3]);
  EXPECT_THROW(find_periodic_component(w, on_cut), GraneError);
}

TEST(FirstReturn, PieceCounts) {
  const auto& w = sys();
  auto s = build_similarity(w);
  auto z1 = first_return_map(w, s.Z1);
  ASSERT_EQ(z1.pieces.size(), 10u);
  EXPECT_EQ(count_sides(z1.pieces, 3), 4u);
  EXPECT_EQ(count_sides(z1.pieces, 4), 5u);
  ASSERT_EQ(count_sides(z1.pieces, 6), 1u);
  for (const auto& p : z1.pieces) {
    if (p.source.vertices().size() == 6) {
      EXPECT_FALSE(equilateral(p.source));
    }
  }

  for (int level = 0; level < 2; ++level) {
    const Region& r = level == 0 ? s.Z4 : s.Z14;
    auto rs = first_return_map(w, r);
    ASSERT_EQ(rs.pieces.size(), 8u);
    EXPECT_EQ(count_sides(rs.pieces, 3), 2u);
    EXPECT_EQ(count_sides(rs.pieces, 4), 6u);
    EXPECT_EQ(count_nonconvex(rs.pieces), 1u);
    QS3 total;
    for (const auto& p : rs.pieces) total += area(p.source);
    EXPECT_EQ(total, area(r));
    std::multiset<std::size_t> times;
    for (const auto& p : rs.pieces) times.insert(p.time);
    if (level == 0) {
      EXPECT_EQ(times, (std::multiset<std::size_t>{1, 1, 1, 1, 10, 25, 27, 53}));
    } else {
      EXPECT_EQ(times, (std::multiset<std::size_t>{20, 35, 37, 63, 318, 525, 743, 987}));
    }
  }
}

TEST(FirstReturn, ReturnMapIsBijectiveOnSamples) {
  const auto& w = sys();
  auto rs = first_return_map(w, zprime4(w));
  PiecewiseMap f = return_map(rs);
  for (const auto& p : sample_interior_points(rs.domain, 200, 7)) {
    auto i = f.locate(p);
    ASSERT_TRUE(i);
    Point q = f.piece(*i).map(p);
    // Exact simulation oracle: the first return of T' by stepping.
    Point r = p;
    std::size_t n = 0;
    do {
      r = induced_step(w, r).point;
      ++n;
    } while (classify_point(rs.domain, r) != Location::interior);
    EXPECT_EQ(r, q);
    EXPECT_EQ(n, f.piece(*i).weight);
  }
}

TEST(FirstReturn, UnboundedRegionIsRejected) {
  EXPECT_THROW(first_return_map(sys(), sys().wedge), DomainError);
}

TEST(Partition, Z4) {
  const auto& w = sys();
  auto rep = verify_partition(w, zprime4(w));
  EXPECT_EQ(rep.periodic.size(), 7u);
  EXPECT_TRUE(rep.area_identity);
  std::multiset<std::size_t> per;
  for (auto p : rep.periods()) per.insert(p);
  EXPECT_EQ(per, (std::multiset<std::size_t>{1, 2, 3, 3, 4, 54, 60}));
}

TEST(Partition, InducedLevelsRepeat) {
  auto chain = refinement_chain(sys(), 2);
  ASSERT_EQ(chain.size(), 2u);
  std::multiset<std::size_t> a, b;
  for (const auto& p : chain[0].report.periodic) a.insert(p.component.per_tprime);
  for (const auto& p : chain[1].report.periodic) b.insert(p.component.per_tprime);
  EXPECT_EQ(a.size(), 13u);
  EXPECT_EQ(a, b);
  std::multiset<std::size_t> weights;
  for (const auto& p : chain[1].map.pieces()) weights.insert(p.weight);
  EXPECT_EQ(weights, (std::multiset<std::size_t>{20, 35, 37, 63, 318, 525, 743, 987}));
}
