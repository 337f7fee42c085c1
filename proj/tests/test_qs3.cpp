#include <gtest/gtest.h>

#include <random>

#include "dodeca/qs3.hpp"

using dodeca::QS3;
using dodeca::Rat;

namespace {

QS3 q(const char* s) { return QS3::parse(s); }

QS3 random_qs3(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 12);
  return {dodeca::make_rat(num(rng), den(rng)), dodeca::make_rat(num(rng), den(rng))};
}

}  // namespace

TEST(QS3, Arithmetic) {
  EXPECT_EQ(q("1+1*s3") * q("1-1*s3"), QS3(-2));
  EXPECT_EQ(QS3::sqrt3() * QS3::sqrt3(), QS3(3));
  EXPECT_EQ(QS3(1) / q("1+1*s3"), q("-1/2+1/2*s3"));
  EXPECT_THROW(QS3(1) / QS3(0), dodeca::ArithmeticError);
}

TEST(QS3, Sign) {
  EXPECT_EQ(QS3(0).sign(), 0);
  EXPECT_EQ(q("-2+1*s3").sign(), -1);
  EXPECT_EQ(q("7-4*s3").sign(), 1);
  EXPECT_EQ(q("-7+4*s3").sign(), -1);
  EXPECT_LT(q("1*s3"), QS3(2));
}

TEST(QS3, ToDouble) {
  EXPECT_DOUBLE_EQ(QS3(1).to_double(), 1.0);
  EXPECT_NEAR(QS3::sqrt3().to_double(), 1.7320508, 1e-7);
  EXPECT_NEAR(q("1/2+1/2*s3").to_double(), 1.3660254, 1e-7);
}

TEST(QS3, Literals) {
  EXPECT_EQ(q("1/2+-1/3*s3").str(), "1/2+-1/3*s3");
  EXPECT_EQ(q("5"), QS3(5));
  EXPECT_EQ(q("-3/6"), QS3(dodeca::make_rat(-1, 2)));
  EXPECT_EQ(q("2/4*s3").str(), "0+1/2*s3");
  EXPECT_EQ(q(" 1-2*s3 ").str(), "1+-2*s3");
  EXPECT_THROW(q("abc"), dodeca::ParseError);
  EXPECT_THROW(q("1+2"), dodeca::ParseError);
  EXPECT_THROW(q("1/0"), dodeca::ParseError);
  EXPECT_THROW(q(""), dodeca::ParseError);
  try {
    q("1+x");
    FAIL();
  } catch (const dodeca::ParseError& e) {
    EXPECT_EQ(e.position, 2u);
  }
}

TEST(QS3, RandomizedFieldAxioms) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    QS3 x = random_qs3(rng), y = random_qs3(rng), z = random_qs3(rng);
    ASSERT_EQ((x + y) + z, x + (y + z));
    ASSERT_EQ((x * y) * z, x * (y * z));
    ASSERT_EQ(x * y, y * x);
    ASSERT_EQ(x + y, y + x);
    ASSERT_EQ(x * (y + z), x * y + x * z);
    if (!x.is_zero()) {
      ASSERT_EQ(x * x.inverse(), QS3(1));
    }
    ASSERT_EQ(x.sign() * y.sign(), (x * y).sign());
    double d = x.to_double();
    if (std::abs(d) > 1e-6) {
      ASSERT_EQ(x.sign(), d > 0 ? 1 : -1);
    }
    ASSERT_EQ(QS3::parse(x.str()), x);
    ASSERT_EQ(QS3::parse(x.str()).str(), x.str());
  }
}
