#include <gtest/gtest.h>

#include "dodeca/periods.hpp"

using namespace dodeca;

namespace {

IntVec v6(std::vector<long> v) { return to_vec(v); }

}  // namespace

TEST(Periods, MatricesChecksum) {
  const auto& m = period_matrices();
  ASSERT_EQ(m.M68.size(), 6u);
  ASSERT_EQ(m.M66.size(), 6u);
  ASSERT_EQ(m.M88.size(), 8u);
  ASSERT_EQ(m.F.size(), 13u);
  ASSERT_EQ(m.G.size(), 8u);
  for (const auto& r : m.M68) EXPECT_EQ(r.size(), 8u);
  for (const auto& r : m.M88) EXPECT_EQ(r.size(), 8u);
  for (const auto& f : m.F) EXPECT_EQ(f.size(), 8u);
  for (const auto& g : m.G) EXPECT_EQ(g.size(), 6u);
  // Frozen from an independent transcription of the printed constants.
  EXPECT_EQ(period_matrices_checksum(m), 0x15d6cfbeb70e1cc8ULL);
  PeriodMatrices edited = m;
  edited.M88[2][5] = 106;
  EXPECT_NE(period_matrices_checksum(edited), 0x15d6cfbeb70e1cc8ULL);
}

TEST(Periods, PeriodOfH) {
  EXPECT_EQ(period_of_h(v6({0, 1, 0, 0, 0, 0})), 6);
  EXPECT_EQ(period_of_h(v6({0, 0, 0, 0, 1, 0})), 12);
  EXPECT_EQ(period_of_h(v6({1, 1, 1, 1, 1, 1})), 24);
  EXPECT_THROW(period_of_h(v6({0, 0, 0, 0, 0, 0})), DomainError);
  EXPECT_THROW(period_of_h(v6({1, 0, 0})), DomainError);
  // Always divides 12 sum(h).
  for (long a = 0; a < 4; ++a)
    for (long b = 0; b < 4; ++b)
      for (long c = 1; c < 4; ++c) {
        IntVec h = v6({a, b, 0, c, a + b, 1});
        mpz_class s = 12 * entry_sum(h);
        EXPECT_EQ(s % period_of_h(h), 0);
      }
}

TEST(Periods, EnumerationExamples) {
  const auto& m = period_matrices();
  EXPECT_EQ(replay({'F', 0, 0, 0, false}), v6({0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(replay({'G', 0, 0, 0, false}), v6({0, 0, 0, 0, 1, 0}));
  IntVec x = to_vec(m.F[4]);
  mpz_class prev = entry_sum(x);
  for (int n = 0; n < 6; ++n) {
    x = mul(m.M88, x);
    EXPECT_GE(entry_sum(x), prev);
    prev = entry_sum(x);
  }
  for (const auto& e : enumerate_H(300)) {
    EXPECT_EQ(replay(e.witness), e.h);
    EXPECT_EQ(period_of_h(e.h), e.period);
    EXPECT_LE(e.period, 300);
  }
}

TEST(Periods, FullSet) {
  auto s = full_period_set(2000);
  // Golden values, frozen after agreeing with a brute-force oracle.
  EXPECT_EQ(s.periods.size(), 1000u);
  unsigned long sum = 0;
  for (auto p : s.periods) sum += p;
  EXPECT_EQ(sum, 1001001u);
  EXPECT_FALSE(s.contains(1));
  EXPECT_FALSE(s.contains(2));
  EXPECT_TRUE(s.contains(3));
  EXPECT_TRUE(s.contains(6));
  for (auto p : s.periods) {
    if (p % 2 == 1 && 2 * p <= 2000) {
      EXPECT_TRUE(s.contains(2 * p)) << p;
    }
    ASSERT_TRUE(s.witnesses.count(p));
    const auto& w = s.witnesses.at(p);
    mpz_class q = period_of_h(replay(w));
    EXPECT_EQ(w.doubled ? 2 * q : q, p);
  }
  auto small = full_period_set(300);
  std::set<unsigned long> filtered;
  for (auto p : s.periods)
    if (p <= 300) filtered.insert(p);
  EXPECT_EQ(small.periods, filtered);
  auto again = full_period_set(2000);
  EXPECT_EQ(again.periods, s.periods);
}

TEST(Periods, CrossValidation) {
  const auto& w = standard_system();
  std::vector<Component> cs;
  for (int i = 1; i <= 5; ++i) cs.push_back(find_periodic_component(w, w.O[i]));
  auto s = full_period_set(2000);
  auto r = cross_validate(w, s, cs, 100, 3, 100000, 20);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.components, 5u);
  EXPECT_EQ(r.samples, 100u);
  EXPECT_GT(r.sample_periodic, 90u);
  EXPECT_EQ(r.oracle_checked, 20u);
  auto empty = cross_validate(w, s, {}, 0);
  EXPECT_TRUE(empty.ok());
  EXPECT_EQ(empty.samples, 0u);
}
