#pragma once

// Exact arithmetic in the field Q[sqrt 3].
//
// A QS3 value a + b*sqrt(3) keeps both components as reduced GMP rationals, so
// equality is structural and every predicate is decided without rounding.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "dodeca/errors.hpp"

namespace dodeca {

using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

class QS3 {
 public:
  QS3() = default;
  QS3(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QS3(Rat a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QS3(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static QS3 sqrt3() { return {Rat(0), Rat(1)}; }

  const Rat& rational() const { return a_; }
  const Rat& radical() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QS3 conj() const { return {a_, -b_}; }
  // a^2 - 3 b^2, the field norm.
  Rat norm() const { return a_ * a_ - 3 * b_ * b_; }

  // Exact sign of the real number a + b*sqrt(3).
  int sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: the term with the larger square wins.
    int c = cmp(a_ * a_, 3 * b_ * b_);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
  }

  // Non-authoritative; for rendering and float pre-filters only.
  double to_double() const {
    static const double kSqrt3 = std::sqrt(3.0);
    if (sgn(a_) * sgn(b_) >= 0) return a_.get_d() + b_.get_d() * kSqrt3;
    // Opposite signs cancel; go through the conjugate, whose terms agree in sign.
    Rat norm = a_ * a_ - 3 * b_ * b_;
    return norm.get_d() / (a_.get_d() - b_.get_d() * kSqrt3);
  }

  QS3& operator+=(const QS3& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QS3& operator-=(const QS3& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QS3& operator*=(const QS3& o) {
    Rat a = a_ * o.a_ + 3 * b_ * o.b_;
    Rat b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QS3& operator/=(const QS3& o) { return *this *= o.inverse(); }

  QS3 inverse() const {
    Rat n = norm();
    if (sgn(n) == 0) throw ArithmeticError("division by zero in Q[sqrt3]");
    return {a_ / n, -b_ / n};
  }

  friend QS3 operator+(QS3 x, const QS3& y) { return x += y; }
  friend QS3 operator-(QS3 x, const QS3& y) { return x -= y; }
  friend QS3 operator*(QS3 x, const QS3& y) { return x *= y; }
  friend QS3 operator/(QS3 x, const QS3& y) { return x /= y; }
  friend QS3 operator-(const QS3& x) { return {-x.a_, -x.b_}; }

  friend bool operator==(const QS3& x, const QS3& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const QS3& x, const QS3& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // Canonical literal: "<a>+<b>*s3" with each rational printed as p or p/q.
  std::string str() const { return rat_str(a_) + "+" + rat_str(b_) + "*s3"; }

  static QS3 parse(std::string_view text);

  std::size_t hash() const {
    std::size_t h = 0;
    auto mix = [&h](const mpz_class& z) {
      std::size_t v = mpz_get_ui(z.get_mpz_t()) ^ (static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) << 1);
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(a_.get_num());
    mix(a_.get_den());
    mix(b_.get_num());
    mix(b_.get_den());
    return h;
  }

 private:
  Rat a_{0};
  Rat b_{0};
};

inline std::ostream& operator<<(std::ostream& os, const QS3& x) { return os << x.str(); }

inline QS3 abs(const QS3& x) { return x.sign() < 0 ? -x : x; }

namespace detail {

class LiteralReader {
 public:
  LiteralReader(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

  bool done() const { return pos_ == text_.size(); }
  std::size_t where() const { return offset_ + pos_; }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool eat(std::string_view s) {
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    if (peek('-') || peek('+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == digits) throw ParseError("expected digits", offset_ + pos_);
    std::string s(text_.substr(start, pos_ - start));
    if (s[0] == '+') s.erase(0, 1);
    return mpz_class(s, 10);
  }

  Rat rational() {
    mpz_class num = integer();
    mpz_class den = 1;
    if (eat('/')) {
      std::size_t at = where();
      den = integer();
      if (den <= 0) throw ParseError("denominator must be positive", at);
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

 private:
  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Accepts "p/q+r/s*s3", "p/q-r/s*s3", "r/s*s3" and the rational shorthands "p", "p/q".
inline QS3 QS3::parse(std::string_view text) {
  auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) throw ParseError("empty number literal", 0);
  auto last = text.find_last_not_of(" \t");
  std::string_view body = text.substr(first, last - first + 1);
  detail::LiteralReader in(body, first);
  Rat a = in.rational();
  if (in.done()) return QS3(a);
  if (in.eat("*s3")) {
    if (!in.done()) throw ParseError("trailing characters", in.where());
    return {Rat(0), a};
  }
  // "+-1/3" and "-1/3" both work: a leading '-' is read as the coefficient's sign.
  if (!in.eat('+') && !in.peek('-')) {
    throw ParseError("expected '+' or '-' before the s3 term", in.where());
  }
  Rat b = in.rational();
  if (!in.eat("*s3")) throw ParseError("expected '*s3'", in.where());
  if (!in.done()) throw ParseError("trailing characters", in.where());
  return {a, b};
}

}  // namespace dodeca

template <>
struct std::hash<dodeca::QS3> {
  std::size_t operator()(const dodeca::QS3& x) const noexcept { return x.hash(); }
};
