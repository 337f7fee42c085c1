#include <gtest/gtest.h>

#include <random>

#include "dodeca/billiard.hpp"

using namespace dodeca;

namespace {

const WedgeSystem& sys() { return standard_system(); }

Point ptq(const char* x, const char* y) { return {QS3::parse(x), QS3::parse(y)}; }

// Random point of the wedge with small rational barycentric-like coordinates.
Point random_wedge_point(std::mt19937_64& rng, long scale = 8) {
  const auto& w = sys();
  std::uniform_int_distribution<long> u(1, 997);
  Vec e1 = w.table.A[2] - w.table.A[1];
  Vec e2 = w.table.A[1] - w.table.A[0];
  QS3 s(make_rat(u(rng) * scale, 997));
  QS3 t(make_rat(u(rng) * scale, 997));
  return w.table.A[1] + s * e1 + t * e2;
}

}  // namespace

TEST(Table, Vertices) {
  const auto& t = sys().table;
  EXPECT_EQ(t.A[0], ptq("2", "0"));
  EXPECT_EQ(t.A[1], ptq("1*s3", "1"));
  EXPECT_EQ(t.A[3], ptq("0", "2"));
  for (int k = 0; k < 12; ++k) EXPECT_EQ(norm2(t.A[mod12(k + 1)] - t.A[k]), norm2(t.A[1] - t.A[0]));
  EXPECT_EQ(area(t.polygon), QS3(12));
}

TEST(Table, NamedPoints) {
  const auto& w = sys();
  const auto& t = w.table;
  EXPECT_EQ(w.P[1], t.A[1]);
  EXPECT_EQ(w.Q[2], t.A[2]);
  EXPECT_EQ(w.Q[5], t.C[3]);
  EXPECT_EQ(w.P[5], t.mirrored(3, 6));
  EXPECT_EQ(w.Q[6], t.mirrored(3, 1));
  EXPECT_EQ(w.Q[6], t.mirrored_relative(4, 6));
  for (int i = 0; i < 12; ++i) EXPECT_EQ(t.mirrored_relative(i, 1), t.mirrored_relative(i + 1, 6));
  EXPECT_EQ(t.Z.size(), 60u);
}

TEST(Table, MirroredTablesMoveByFive) {
  const auto& t = sys().table;
  for (int i = 0; i < 12; ++i) {
    Point c = interior_point(t.gamma[i]);
    Point img = billiard_step(t, c);
    EXPECT_EQ(classify_point(t.gamma[mod12(i + 5)], img), Location::interior) << i;
  }
}

TEST(Billiard, StepExamples) {
  const auto& t = sys().table;
  Point p = ptq("2*s3", "0");
  // With the sector orientation fixed by T(gamma^i) = gamma^{i+5}, this point is in V_2, not V_1.
  ASSERT_EQ(classify_point(t.V[2], p), Location::interior);
  EXPECT_EQ(billiard_step(t, p), QS3(2) * t.A[2] - p);
  EXPECT_EQ(billiard_step(t, p), ptq("2-2*s3", "2*s3"));
  EXPECT_EQ(QS3(2) * t.A[1] - p, ptq("0", "2"));
  EXPECT_THROW(billiard_step(t, ptq("0", "0")), DomainError);
  // On the line through A_1 and A_2, beyond A_1: boundary between V_1 and V_2.
  EXPECT_THROW(billiard_step(t, t.A[1] + (t.A[1] - t.A[2])), GraneError);
}

TEST(Billiard, SectorsPartitionAndInverse) {
  const auto& t = sys().table;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> u(-400, 400);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    Point p{QS3(make_rat(u(rng), 40), make_rat(u(rng), 97)), QS3(make_rat(u(rng), 37))};
    if (classify_point(t.polygon, p) != Location::exterior) continue;
    int inside = 0;
    for (const auto& v : t.V) inside += classify_point(v, p) == Location::interior;
    ASSERT_EQ(inside, 1) << p.str();
    Point q = billiard_step(t, p);
    ASSERT_EQ(billiard_step(t, q, Direction::backward), p);
    // T commutes with the rotation about the centre.
    AffMap r = AffMap::rotation(1);
    ASSERT_EQ(billiard_step(t, r(p)), r(q));
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(Wedge, PiecesAreTheCutCells) {
  const auto& w = sys();
  auto parts = w.Tp.partition(w.wedge);
  ASSERT_EQ(parts.size(), 6u);
  for (const auto& [r, i] : parts) EXPECT_EQ(r, w.Tp.piece(i).domain);
  EXPECT_EQ(w.piece(6), apply_map(AffMap::translation(w.Q[6] - w.P[1]), w.wedge));
}

TEST(Wedge, PieceMaps) {
  const auto& w = sys();
  for (int i = 1; i <= 5; ++i) {
    EXPECT_EQ(w.maps[i], AffMap::rotation_about(w.O[i], 6 - i)) << i;
    EXPECT_EQ(classify_point(w.piece(i), w.O[i]), Location::interior);
    Step s = induced_step(w, w.O[i]);
    EXPECT_EQ(s.point, w.O[i]);
    EXPECT_EQ(s.symbol, i);
    // O_i is on the bisector of the wedge and of the angle P_i A_{i+1} Q_{i+1}.
    auto d2 = [&](const Line& l) {
      QS3 e = l.eval(w.O[i]);
      return e * e / (l.a * l.a + l.b * l.b);
    };
    EXPECT_EQ(d2(w.table.l[0]), d2(w.table.l[1]));
    // The sides of the angle P_i A_{i+1} Q_{i+1} lie on l_i and l_{i+1}.
    EXPECT_EQ(d2(w.table.l[i]), d2(w.table.l[i + 1]));
  }
  EXPECT_EQ(w.maps[6], AffMap::translation(w.table.mirrored(3, 7) - w.table.mirrored(3, 1)));
}

TEST(Wedge, InducedMapIsTFollowedByRotation) {
  const auto& w = sys();
  std::mt19937_64 rng(5);
  for (int n = 0; n < 1000; ++n) {
    Point p = random_wedge_point(rng);
    auto idx = w.Tp.locate(p);
    if (!idx) continue;
    int i = w.Tp.piece(*idx).symbol;
    ASSERT_EQ(classify_point(w.table.V[i + 1], p), Location::interior);
    Point q = billiard_step(w.table, p);
    ASSERT_EQ(AffMap::rotation(-i)(q), induced_step(w, p).point);
    ASSERT_TRUE(w.maps[i].is_isometry());
  }
}

TEST(Wedge, Itineraries) {
  const auto& w = sys();
  EXPECT_EQ(symbols_str(compute_itinerary(w, w.O[1], 5).symbols), "11111");
  EXPECT_EQ(symbols_str(compute_itinerary(w, w.O[4], 5).symbols), "44444");
  Point p6 = interior_point(w.piece(6));
  EXPECT_EQ(induced_step(w, p6).point, p6 + (w.table.mirrored(3, 7) - w.table.mirrored(3, 1)));
  Itinerary stop = compute_itinerary(w, w.P[2] + QS3(make_rat(1, 2)) * (w.Q[2] - w.P[2]), 3);
  EXPECT_TRUE(stop.stopped.has_value());
  EXPECT_EQ(stop.forward, 0u);
  EXPECT_THROW(induced_step(w, w.table.A[0]), DomainError);
}

TEST(Wedge, RandomizedProperties) {
  const auto& w = sys();
  std::mt19937_64 rng(9);
  int shift_checked = 0;
  int conj_checked = 0;
  for (int n = 0; n < 1500; ++n) {
    Point p = random_wedge_point(rng);
    Itinerary it = compute_itinerary(w, p, 6, 2);
    if (it.stopped) continue;
    Point q = induced_step(w, p).point;
    ASSERT_EQ(induced_step(w, q, Direction::backward).point, p);
    Itinerary jt = compute_itinerary(w, q, 5, 3);
    ASSERT_FALSE(jt.stopped);
    ASSERT_EQ(jt.symbols, it.symbols);  // the shift property
    ++shift_checked;
    // Wedge conjugacy H T' = T6 H.
    Point hq = w.H(q);
    Point t6 = T6(w, w.H(p));
    ASSERT_EQ(t6, hq);
    ++conj_checked;
  }
  EXPECT_GE(shift_checked, 1000);
  EXPECT_GE(conj_checked, 1000);
}

TEST(Wedge, ZprimeIsInvariant) {
  const auto& w = sys();
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int n = 0; n < 20000 && checked < 10000; ++n) {
    Point p = random_wedge_point(rng, 6);
    if (classify_point(w.Zp, p) != Location::interior) continue;
    auto idx = w.Tp.locate(p);
    if (!idx) continue;
    ASSERT_NE(classify_point(w.Zp, induced_step(w, p).point), Location::exterior);
    ++checked;
  }
  EXPECT_GE(checked, 1000);
}
