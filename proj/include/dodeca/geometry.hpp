#pragma once

// Exact planar primitives over Q[sqrt 3].
//
// Regions are open polygonal sets. A bounded region is a simple polygon listed
// counterclockwise. An unbounded region is a vertex chain plus two rays: the
// boundary comes in from infinity along the entry ray (stored as the direction
// pointing away from the first vertex), walks the chain, and leaves along the
// exit ray from the last vertex. The interior is always on the left.
//
// Every Region is stored in canonical form (no repeated or collinear vertices,
// bounded polygons rotated to start at the lexicographically least vertex, ray
// directions scaled so the first nonzero component is +-1), so equality of
// point sets is structural equality.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dodeca/errors.hpp"
#include "dodeca/qs3.hpp"

namespace dodeca {

struct Point {
  QS3 x;
  QS3 y;

  Point& operator+=(const Point& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Point& operator-=(const Point& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator-(const Point& a) { return {-a.x, -a.y}; }
  friend Point operator*(const QS3& k, const Point& a) { return {k * a.x, k * a.y}; }
  friend Point operator*(const Point& a, const QS3& k) { return {k * a.x, k * a.y}; }
  friend bool operator==(const Point& a, const Point& b) = default;

  std::string str() const { return x.str() + "," + y.str(); }
  std::size_t hash() const { return x.hash() * 1000003u ^ y.hash(); }
};

using Vec = Point;

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept { return p.hash(); }
};

inline QS3 cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline QS3 dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
inline QS3 norm2(const Vec& a) { return dot(a, a); }
inline int orientation(const Point& a, const Point& b, const Point& c) {
  return cross(b - a, c - a).sign();
}
inline bool lex_less(const Point& a, const Point& b) {
  int s = (a.x - b.x).sign();
  if (s != 0) return s < 0;
  return (a.y - b.y).sign() < 0;
}
inline bool parallel(const Vec& a, const Vec& b) { return cross(a, b).is_zero(); }
inline bool same_direction(const Vec& a, const Vec& b) {
  return parallel(a, b) && dot(a, b).sign() > 0;
}

// Positive multiple of v whose first nonzero component is +-1.
inline Vec normalize_direction(const Vec& v) {
  if (!v.x.is_zero()) return abs(v.x).inverse() * v;
  if (!v.y.is_zero()) return abs(v.y).inverse() * v;
  throw DomainError("zero direction vector");
}

// Point "x,y" with each coordinate in the QS3 literal format.
inline Point parse_point(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("expected '<x>,<y>'", 0);
  QS3 x = QS3::parse(text.substr(0, comma));
  QS3 y;
  try {
    y = QS3::parse(text.substr(comma + 1));
  } catch (const ParseError& e) {
    throw ParseError("bad y coordinate", comma + 1 + e.position);
  }
  return {x, y};
}

// The line {p : a*x + b*y = c}, scaled so the first nonzero of (a, b) is 1.
// Its direction is (b, -a); the positive side (a*x + b*y > c) lies to the left.
struct Line {
  QS3 a;
  QS3 b;
  QS3 c;

  static Line make(QS3 a, QS3 b, QS3 c) {
    QS3 k = !a.is_zero() ? a : b;
    if (k.is_zero()) throw DomainError("degenerate line");
    QS3 inv = k.inverse();
    return {a * inv, b * inv, c * inv};
  }
  // Line through p and q; note the canonical scaling may flip its orientation.
  static Line through(const Point& p, const Point& q) {
    Vec d = q - p;
    return make(-d.y, d.x, -d.y * p.x + d.x * p.y);
  }

  QS3 eval(const Point& p) const { return a * p.x + b * p.y - c; }
  int side(const Point& p) const { return eval(p).sign(); }
  Vec normal() const { return {a, b}; }
  Vec direction() const { return {b, -a}; }
  friend bool operator==(const Line&, const Line&) = default;
};

// x -> M x + t with M = [[m00, m01], [m10, m11]].
struct AffMap {
  QS3 m00{1};
  QS3 m01{0};
  QS3 m10{0};
  QS3 m11{1};
  QS3 tx{0};
  QS3 ty{0};

  static AffMap identity() { return {}; }
  static AffMap translation(const Vec& v) { return {1, 0, 0, 1, v.x, v.y}; }
  static AffMap linear(QS3 m00, QS3 m01, QS3 m10, QS3 m11) {
    return {std::move(m00), std::move(m01), std::move(m10), std::move(m11), 0, 0};
  }
  // Counterclockwise rotation by k*pi/6 about the origin.
  static AffMap rotation(int k) {
    static const QS3 half = make_rat(1, 2);
    static const QS3 h3 = QS3(Rat(0), make_rat(1, 2));
    // cos, sin of k*30 degrees.
    static const QS3 cs[12][2] = {{1, 0},      {h3, half},   {half, h3},   {0, 1},
                                  {-half, h3}, {-h3, half},  {-1, 0},      {-h3, -half},
                                  {-half, -h3}, {0, -1},     {half, -h3},  {h3, -half}};
    int m = ((k % 12) + 12) % 12;
    const QS3& c = cs[m][0];
    const QS3& s = cs[m][1];
    return linear(c, -s, s, c);
  }
  static AffMap rotation_about(const Point& center, int k) {
    return translation(center).after(rotation(k)).after(translation(-center));
  }
  static AffMap homothety(const Point& center, const QS3& ratio) {
    return {ratio, 0, 0, ratio, center.x - ratio * center.x, center.y - ratio * center.y};
  }
  static AffMap point_reflection(const Point& c) { return homothety(c, QS3(-1)); }

  Point operator()(const Point& p) const {
    return {m00 * p.x + m01 * p.y + tx, m10 * p.x + m11 * p.y + ty};
  }
  Vec apply_linear(const Vec& v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
  QS3 det() const { return m00 * m11 - m01 * m10; }
  Vec translation_part() const { return {tx, ty}; }

  // (*this) o g : first g, then *this.
  AffMap after(const AffMap& g) const {
    return {m00 * g.m00 + m01 * g.m10, m00 * g.m01 + m01 * g.m11,
            m10 * g.m00 + m11 * g.m10, m10 * g.m01 + m11 * g.m11,
            m00 * g.tx + m01 * g.ty + tx, m10 * g.tx + m11 * g.ty + ty};
  }

  AffMap inverse() const {
    QS3 d = det();
    if (d.is_zero()) throw ArithmeticError("affine map is not invertible");
    QS3 inv = d.inverse();
    AffMap r{m11 * inv, -m01 * inv, -m10 * inv, m00 * inv, 0, 0};
    Point t = r.apply_linear({tx, ty});
    r.tx = -t.x;
    r.ty = -t.y;
    return r;
  }

  bool is_isometry() const {
    return m00 * m00 + m10 * m10 == QS3(1) && m01 * m01 + m11 * m11 == QS3(1) &&
           (m00 * m01 + m10 * m11).is_zero();
  }
  bool is_translation() const {
    return m00 == QS3(1) && m11 == QS3(1) && m01.is_zero() && m10.is_zero();
  }
  // If the linear part is a rotation by k*pi/6, returns k in [0, 12).
  std::optional<int> rotation_steps() const {
    for (int k = 0; k < 12; ++k) {
      AffMap r = rotation(k);
      if (r.m00 == m00 && r.m01 == m01 && r.m10 == m10 && r.m11 == m11) return k;
    }
    return std::nullopt;
  }
  // The unique fixed point; throws when 1 is an eigenvalue.
  Point fixed_point() const {
    // (I - M) p = t
    AffMap sys{1 - m00, -m01, -m10, 1 - m11, 0, 0};
    if (sys.det().is_zero()) throw ArithmeticError("affine map has no unique fixed point");
    return sys.inverse().apply_linear({tx, ty});
  }

  friend bool operator==(const AffMap&, const AffMap&) = default;
  std::size_t hash() const {
    std::size_t h = 0;
    for (const QS3* q : {&m00, &m01, &m10, &m11, &tx, &ty}) h = h * 31 + q->hash();
    return h;
  }
};

enum class Location { interior, boundary, exterior };

class Region;
namespace detail {
std::optional<Region> assemble(std::vector<Point> chain, std::optional<Vec> entry,
                               std::optional<Vec> exit);
}

class Region {
 public:
  // Empty placeholder; only meaningful once assigned from a factory.
  Region() = default;

  // Simple polygon in either orientation; throws on degenerate input.
  static Region polygon(std::vector<Point> vertices) {
    auto r = detail::assemble(std::move(vertices), std::nullopt, std::nullopt);
    if (!r) throw DomainError("degenerate polygon");
    return *std::move(r);
  }
  // Unbounded region; the chain must be listed with the interior on the left.
  static Region unbounded(std::vector<Point> chain, Vec entry, Vec exit) {
    auto r = detail::assemble(std::move(chain), std::move(entry), std::move(exit));
    if (!r) throw DomainError("degenerate unbounded region");
    return *std::move(r);
  }

  bool bounded() const { return !entry_.has_value(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::optional<Vec>& entry_ray() const { return entry_; }
  const std::optional<Vec>& exit_ray() const { return exit_; }
  std::size_t size() const { return vertices_.size(); }

  bool convex() const {
    std::size_t n = vertices_.size();
    if (bounded()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (orientation(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]) < 0) return false;
      }
      return true;
    }
    std::vector<Vec> dirs;
    dirs.push_back(-*entry_);
    for (std::size_t i = 0; i + 1 < n; ++i) dirs.push_back(vertices_[i + 1] - vertices_[i]);
    dirs.push_back(*exit_);
    for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
      if (cross(dirs[i], dirs[i + 1]).sign() < 0) return false;
    }
    // Total turning from the incoming ray to the outgoing one is at most a half-turn.
    return cross(-*entry_, *exit_).sign() >= 0;
  }

  friend bool operator==(const Region&, const Region&) = default;

  std::size_t hash() const {
    std::size_t h = vertices_.size();
    for (const auto& v : vertices_) h = h * 1000003u ^ v.hash();
    if (entry_) h = h * 31 + entry_->hash() + 7 * exit_->hash();
    return h;
  }

  // Float bounding box of the vertex chain (rays ignored); pre-filter use only.
  struct Box {
    double x0, y0, x1, y1;
  };
  Box float_box() const {
    Box b{1e300, 1e300, -1e300, -1e300};
    for (const auto& v : vertices_) {
      double x = v.x.to_double();
      double y = v.y.to_double();
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x);
      b.y1 = std::max(b.y1, y);
    }
    return b;
  }

 private:
  friend std::optional<Region> detail::assemble(std::vector<Point>, std::optional<Vec>,
                                                std::optional<Vec>);

  std::vector<Point> vertices_;
  std::optional<Vec> entry_;
  std::optional<Vec> exit_;
};

namespace detail {

inline QS3 signed_area2(const std::vector<Point>& v) {
  QS3 s;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
  return s;
}

// Drops repeated vertices and vertices whose neighbours are collinear with them
// (straight continuations and zero-width spikes alike).
inline void simplify_cycle(std::vector<Point>& v) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& prev = v[(i + n - 1) % n];
      const Point& next = v[(i + 1) % n];
      if (v[i] == next || orientation(prev, v[i], next) == 0) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) v.clear();
}

inline void simplify_chain(std::vector<Point>& v, Vec& entry, Vec& exit) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Point> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!out.empty() && out.back() == v[i]) {
        changed = true;
        continue;
      }
      out.push_back(v[i]);
    }
    v = std::move(out);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (orientation(v[i - 1], v[i], v[i + 1]) == 0) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
    if (v.size() >= 2 && parallel(entry, v[1] - v[0])) {
      v.erase(v.begin());
      changed = true;
    }
    if (v.size() >= 2 && parallel(exit, v[v.size() - 1] - v[v.size() - 2])) {
      v.pop_back();
      changed = true;
    }
  }
}

inline std::optional<Region> assemble(std::vector<Point> chain, std::optional<Vec> entry,
                                      std::optional<Vec> exit) {
  Region r;
  if (!entry) {
    simplify_cycle(chain);
    if (chain.size() < 3) return std::nullopt;
    QS3 a2 = signed_area2(chain);
    if (a2.is_zero()) return std::nullopt;
    if (a2.sign() < 0) std::reverse(chain.begin(), chain.end());
    auto least = std::min_element(chain.begin(), chain.end(), lex_less);
    std::rotate(chain.begin(), least, chain.end());
    r.vertices_ = std::move(chain);
    return r;
  }
  if (chain.empty()) return std::nullopt;
  Vec in = normalize_direction(*entry);
  Vec out = normalize_direction(*exit);
  simplify_chain(chain, in, out);
  // A single vertex with both rays along the same direction is a zero-width spike.
  if (chain.size() == 1 && in == out) return std::nullopt;
  r.vertices_ = std::move(chain);
  r.entry_ = std::move(in);
  r.exit_ = std::move(out);
  return r;
}

// Is u strictly inside the counterclockwise angular sweep from a to b?
// A zero sweep (a == b) is empty; callers resolve the full-turn case themselves.
inline bool strictly_between_ccw(const Vec& a, const Vec& u, const Vec& b) {
  auto half = [&a](const Vec& v) {
    int c = cross(a, v).sign();
    return c > 0 || (c == 0 && dot(a, v).sign() > 0) ? 0 : 1;
  };
  auto before = [&](const Vec& p, const Vec& q) {  // ccw angle from a: p < q
    int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    return cross(p, q).sign() > 0;
  };
  if (same_direction(a, u)) return false;
  if (same_direction(a, b)) return false;
  return before(u, b);
}

}  // namespace detail

// Exact point location against an open region.
inline Location classify_point(const Region& r, const Point& p) {
  const auto& v = r.vertices();
  std::size_t n = v.size();
  auto on_segment = [&p](const Point& a, const Point& b) {
    return cross(b - a, p - a).is_zero() && dot(p - a, p - b).sign() <= 0;
  };
  auto on_ray = [&p](const Point& a, const Vec& d) {
    return cross(d, p - a).is_zero() && dot(p - a, d).sign() >= 0;
  };
  if (r.bounded()) {
    for (std::size_t i = 0; i < n; ++i)
      if (on_segment(v[i], v[(i + 1) % n])) return Location::boundary;
  } else {
    if (on_ray(v.front(), *r.entry_ray()) || on_ray(v.back(), *r.exit_ray())) return Location::boundary;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (on_segment(v[i], v[i + 1])) return Location::boundary;
  }

  // Crossing parity along a test ray that is parallel to no boundary piece.
  static const Vec candidates[] = {{1, 0}, {0, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2},
                                   {1, -2}, {2, -3}, {1, 5}, {5, -1}};
  std::vector<Vec> dirs;
  if (!r.bounded()) {
    dirs.push_back(*r.entry_ray());
    dirs.push_back(*r.exit_ray());
  }
  for (std::size_t i = 0; i + (r.bounded() ? 0 : 1) < n; ++i) dirs.push_back(v[(i + 1) % n] - v[i]);
  const Vec* u = nullptr;
  for (const auto& c : candidates) {
    if (std::none_of(dirs.begin(), dirs.end(), [&c](const Vec& d) { return parallel(c, d); })) {
      u = &c;
      break;
    }
  }
  if (u == nullptr) throw DomainError("no generic test direction");
  // Coordinates relative to the test ray: along = dot(u, q - p), side = cross(u, q - p).
  auto above = [&](const Point& q) { return cross(*u, q - p).sign() > 0; };
  int crossings = 0;
  auto segment = [&](const Point& a, const Point& b) {
    bool sa = above(a), sb = above(b);
    if (sa == sb) return;
    // Intersection parameter with the test line, ahead of p?
    QS3 ca = cross(*u, a - p), cb = cross(*u, b - p);
    // point = a + s (b - a), s = ca / (ca - cb); along = dot(u, point - p)
    QS3 num = dot(*u, a - p) * (ca - cb) + ca * dot(*u, b - a);
    if ((num * (ca - cb)).sign() > 0) ++crossings;
  };
  auto ray = [&](const Point& a, const Vec& d) {
    bool sa = above(a);
    int sd = cross(*u, d).sign();
    bool sinf = sd == 0 ? sa : sd > 0;
    if (sa == sinf) return;
    QS3 ca = cross(*u, a - p), cd = cross(*u, d);
    // point = a + s d, s = -ca / cd
    QS3 num = dot(*u, a - p) * cd - ca * dot(*u, d);
    if ((num * cd).sign() > 0) ++crossings;
  };
  if (r.bounded()) {
    for (std::size_t i = 0; i < n; ++i) segment(v[i], v[(i + 1) % n]);
  } else {
    ray(v.front(), *r.entry_ray());
    for (std::size_t i = 0; i + 1 < n; ++i) segment(v[i], v[i + 1]);
    ray(v.back(), *r.exit_ray());
    const Vec& ex = *r.exit_ray();
    const Vec& en = *r.entry_ray();
    bool at_infinity;
    if (same_direction(ex, en)) {
      at_infinity = cross(ex, v.front() - v.back()).sign() < 0;
    } else {
      at_infinity = detail::strictly_between_ccw(ex, *u, en);
    }
    if (at_infinity) ++crossings;
  }
  return crossings % 2 == 1 ? Location::interior : Location::exterior;
}

namespace detail {

struct Crossing {
  Point at;
  QS3 t;    // dot(d, at)
  QS3 key;  // tie-break for crossings that sit on a vertex on the line
  bool entering;  // boundary goes from the negative to the positive side
  std::size_t node;
};

// Connected components of r on the open positive side of the line n.p = c.
// Points on the line count as negative: the pieces are the limits of
// r ∩ {n.p > c + eps}, so two parts that only touch along the line stay apart.
inline std::vector<Region> positive_parts(const Region& r, const Vec& n, const QS3& c) {
  const Vec d{n.y, -n.x};
  const auto& verts = r.vertices();
  const bool bnd = r.bounded();
  auto f = [&](const Point& p) { return dot(n, p) - c; };
  auto side_of = [&](const QS3& val) {
    int s = val.sign();
    return s != 0 ? s : -1;
  };

  struct Node {
    Point p;
    int side;
    bool infinite = false;
    int crossing = -1;
  };
  std::vector<Node> nodes;
  std::vector<Crossing> xs;
  std::vector<QS3> fv;
  fv.reserve(verts.size());
  for (const auto& v : verts) fv.push_back(f(v));

  auto add_crossing = [&](const Point& at, const QS3& key, int from_side) {
    xs.push_back({at, dot(d, at), key, from_side < 0, nodes.size()});
    nodes.push_back({at, 0, false, static_cast<int>(xs.size() - 1)});
  };
  auto tie_key = [&](const Vec& e) { return dot(d, e) / abs(dot(n, e)); };
  // Edge between a vertex and infinity along ray direction `dir`.
  auto ray_crossing = [&](std::size_t vi, const Vec& dir, int from_side) {
    const QS3& fa = fv[vi];
    if (fa.is_zero()) {
      add_crossing(verts[vi], tie_key(dir), from_side);
    } else {
      QS3 s = -fa / dot(n, dir);
      add_crossing(verts[vi] + s * dir, QS3(0), from_side);
    }
  };
  auto seg_crossing = [&](std::size_t ai, std::size_t bi, int from_side) {
    const Point& a = verts[ai];
    const Point& b = verts[bi];
    if (fv[ai].is_zero()) {
      add_crossing(a, tie_key(b - a), from_side);
    } else if (fv[bi].is_zero()) {
      add_crossing(b, tie_key(a - b), from_side);
    } else {
      QS3 s = fv[ai] / (fv[ai] - fv[bi]);
      add_crossing(a + s * (b - a), QS3(0), from_side);
    }
  };

  std::size_t nv = verts.size();
  if (!bnd) {
    int s_inf = dot(n, *r.entry_ray()).sign();
    int s0 = side_of(fv[0]);
    int sin = s_inf != 0 ? s_inf : s0;
    nodes.push_back({Point{}, sin, true});
    if (sin != s0) ray_crossing(0, *r.entry_ray(), sin);
  }
  for (std::size_t i = 0; i < nv; ++i) {
    int si = side_of(fv[i]);
    nodes.push_back({verts[i], si});
    std::size_t j = i + 1;
    if (j == nv) {
      if (!bnd) break;
      j = 0;
    }
    int sj = side_of(fv[j]);
    if (si != sj) seg_crossing(i, j, si);
  }
  if (!bnd) {
    int sl = side_of(fv[nv - 1]);
    int s_inf = dot(n, *r.exit_ray()).sign();
    int sout = s_inf != 0 ? s_inf : sl;
    if (sout != sl) ray_crossing(nv - 1, *r.exit_ray(), sl);
    nodes.push_back({Point{}, sout, true});
  }

  if (xs.empty()) {
    bool positive = std::all_of(nodes.begin(), nodes.end(), [](const Node& nd) { return nd.side > 0; });
    if (positive) return {r};
    return {};
  }

  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&xs](std::size_t a, std::size_t b) {
    int s = (xs[a].t - xs[b].t).sign();
    if (s != 0) return s < 0;
    return (xs[a].key - xs[b].key).sign() < 0;
  });
  std::vector<std::size_t> rank(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  std::vector<bool> used(xs.size(), false);
  std::vector<Region> out;
  const std::size_t nn = nodes.size();

  // Walk the positive side starting at node `start`; `entry` is set when the
  // piece comes in from infinity.
  auto walk = [&](std::size_t start, std::optional<Vec> entry) {
    std::vector<Point> chain;
    std::optional<Vec> exit;
    std::size_t cur = start;
    const int loop_crossing = nodes[start].crossing;
    bool first = true;
    while (true) {
      const Node& nd = nodes[cur];
      if (nd.infinite) {
        if (!first) {
          exit = *r.exit_ray();
          break;
        }
      } else if (nd.crossing >= 0 && !xs[static_cast<std::size_t>(nd.crossing)].entering) {
        chain.push_back(nd.p);
        std::size_t k = rank[static_cast<std::size_t>(nd.crossing)];
        if (k + 1 == order.size()) {
          exit = d;
          break;
        }
        std::size_t e = order[k + 1];
        if (!xs[e].entering) throw CheckFailure("split_region: inconsistent crossing order");
        if (static_cast<int>(e) == loop_crossing) break;
        used[e] = true;
        chain.push_back(xs[e].at);
        cur = xs[e].node;
      } else {
        chain.push_back(nd.p);
      }
      first = false;
      cur = cur + 1;
      if (cur == nn) {
        if (!bnd) throw CheckFailure("split_region: walked past the end of an open chain");
        cur = 0;
      }
      if (cur == start && bnd) break;
    }
    auto piece = assemble(std::move(chain), entry, exit);
    if (piece) out.push_back(*std::move(piece));
  };

  if (!bnd && nodes.front().side > 0) walk(0, *r.entry_ray());
  if (xs[order.front()].entering) {
    used[order.front()] = true;
    walk(xs[order.front()].node, -d);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].entering && !used[i]) {
      used[i] = true;
      walk(xs[i].node, std::nullopt);
    }
  }
  return out;
}

}  // namespace detail

// Open pieces of r on the positive side of l, then those on the negative side.
inline std::vector<Region> split_region(const Region& r, const Line& l) {
  Vec n = l.normal();
  auto pos = detail::positive_parts(r, n, l.c);
  auto neg = detail::positive_parts(r, -n, -l.c);
  pos.insert(pos.end(), std::make_move_iterator(neg.begin()), std::make_move_iterator(neg.end()));
  return pos;
}

// Parts of r strictly on the positive side of l.
inline std::vector<Region> clip_positive(const Region& r, const Line& l) {
  return detail::positive_parts(r, l.normal(), l.c);
}

inline Region apply_map(const AffMap& f, const Region& r) {
  QS3 det = f.det();
  if (det.is_zero()) throw ArithmeticError("apply_map: map is not invertible");
  std::vector<Point> vs;
  vs.reserve(r.size());
  for (const auto& v : r.vertices()) vs.push_back(f(v));
  if (r.bounded()) return Region::polygon(std::move(vs));
  Vec in = f.apply_linear(*r.entry_ray());
  Vec out = f.apply_linear(*r.exit_ray());
  if (det.sign() < 0) {
    std::reverse(vs.begin(), vs.end());
    std::swap(in, out);
  }
  return Region::unbounded(std::move(vs), in, out);
}

inline bool region_equal(const Region& a, const Region& b) { return a == b; }

// Twice the signed area is avoided in the interface: area is positive.
inline QS3 area(const Region& r) {
  if (!r.bounded()) throw DomainError("area of an unbounded region");
  return detail::signed_area2(r.vertices()) * QS3(make_rat(1, 2));
}

inline std::pair<QS3, Point> area_and_centroid(const Region& r) {
  if (!r.bounded()) throw DomainError("centroid of an unbounded region");
  const auto& v = r.vertices();
  QS3 a2;
  QS3 cx;
  QS3 cy;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % n];
    QS3 w = cross(p, q);
    a2 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  QS3 k = (QS3(3) * a2).inverse();
  return {a2 * QS3(make_rat(1, 2)), Point{cx * k, cy * k}};
}

// Some point of the open region, exact. Convex regions use the centroid of a
// triangle on three boundary points; nonconvex polygons use an ear.
inline Point interior_point(const Region& r) {
  const auto& v = r.vertices();
  if (r.convex()) {
    std::vector<Point> pts;
    if (!r.bounded()) pts.push_back(v.front() + *r.entry_ray());
    pts.insert(pts.end(), v.begin(), v.end());
    if (!r.bounded()) pts.push_back(v.back() + *r.exit_ray());
    for (std::size_t k = 2; k < pts.size(); ++k) {
      if (orientation(pts[0], pts[1], pts[k]) != 0) {
        Point c = QS3(make_rat(1, 3)) * (pts[0] + pts[1] + pts[k]);
        if (classify_point(r, c) == Location::interior) return c;
      }
    }
    // Parallel-ray strip with a one-segment chain: step inward along the rays.
    if (!r.bounded()) {
      Point c = QS3(make_rat(1, 2)) * (v.front() + v.back()) + *r.exit_ray();
      if (classify_point(r, c) == Location::interior) return c;
    }
    throw DomainError("interior_point: no interior sample found");
  }
  if (!r.bounded()) throw DomainError("interior_point: nonconvex unbounded region");
  std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v[(i + n - 1) % n];
    const Point& b = v[i];
    const Point& c = v[(i + 1) % n];
    if (orientation(a, b, c) <= 0) continue;
    Point g = QS3(make_rat(1, 3)) * (a + b + c);
    if (classify_point(r, g) == Location::interior) return g;
  }
  throw DomainError("interior_point: no ear found");
}

// Lines supporting the edges and rays of a region, oriented with the region on
// the positive side locally.
inline std::vector<Line> edge_lines(const Region& r) {
  const auto& v = r.vertices();
  std::vector<Line> out;
  auto oriented = [](const Point& p, const Vec& dir) {
    // positive side is the left of dir
    return Line{-dir.y, dir.x, -dir.y * p.x + dir.x * p.y};
  };
  std::size_t n = v.size();
  if (r.bounded()) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(oriented(v[i], v[(i + 1) % n] - v[i]));
  } else {
    out.push_back(oriented(v.front(), -*r.entry_ray()));
    for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(oriented(v[i], v[i + 1] - v[i]));
    out.push_back(oriented(v.back(), *r.exit_ray()));
  }
  return out;
}

// Intersection of r with a convex region k (r itself may be nonconvex).
inline std::vector<Region> intersect_convex(const Region& r, const Region& k) {
  std::vector<Region> cur{r};
  for (const Line& l : edge_lines(k)) {
    std::vector<Region> next;
    for (const auto& piece : cur) {
      auto parts = detail::positive_parts(piece, l.normal(), l.c);
      next.insert(next.end(), std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end()));
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

// r minus the closure of a convex region k, as a list of pieces.
inline std::vector<Region> subtract_convex(const Region& r, const Region& k) {
  std::vector<Region> out;
  std::vector<Region> cur{r};
  for (const Line& l : edge_lines(k)) {
    std::vector<Region> inside;
    for (const auto& piece : cur) {
      auto outside = detail::positive_parts(piece, -l.normal(), -l.c);
      out.insert(out.end(), std::make_move_iterator(outside.begin()), std::make_move_iterator(outside.end()));
      auto in = detail::positive_parts(piece, l.normal(), l.c);
      inside.insert(inside.end(), std::make_move_iterator(in.begin()), std::make_move_iterator(in.end()));
    }
    cur = std::move(inside);
    if (cur.empty()) break;
  }
  return out;
}

// Splits r into convex pieces by cutting along edges at reflex vertices.
inline std::vector<Region> convex_decomposition(const Region& r) {
  std::vector<Region> done;
  std::vector<Region> todo{r};
  while (!todo.empty()) {
    Region cur = std::move(todo.back());
    todo.pop_back();
    if (cur.convex()) {
      done.push_back(std::move(cur));
      continue;
    }
    const auto& v = cur.vertices();
    std::size_t n = v.size();
    if (!cur.bounded()) throw DomainError("convex_decomposition: nonconvex unbounded region");
    for (std::size_t i = 0; i < n; ++i) {
      if (orientation(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) < 0) {
        auto parts = split_region(cur, Line::through(v[i], v[(i + 1) % n]));
        if (parts.size() < 2) throw CheckFailure("convex_decomposition: reflex cut failed");
        for (auto& p : parts) todo.push_back(std::move(p));
        break;
      }
    }
  }
  return done;
}

// Where a point or region sits relative to a line: -1, +1, or 0 when it straddles.
inline int region_side(const Region& r, const Line& l) {
  int pos = 0;
  int neg = 0;
  for (const auto& v : r.vertices()) {
    int s = l.side(v);
    pos += s > 0;
    neg += s < 0;
    if (pos && neg) return 0;
  }
  if (!r.bounded()) {
    for (const Vec* d : {&*r.entry_ray(), &*r.exit_ray()}) {
      int s = dot(l.normal(), *d).sign();
      pos += s > 0;
      neg += s < 0;
    }
    if (pos && neg) return 0;
  }
  return pos ? 1 : (neg ? -1 : 0);
}

// Is every point of r in the closure of the convex region k?
inline bool inside_convex_closure(const Region& r, const Region& k) {
  if (!r.bounded() && k.bounded()) return false;
  auto lines = edge_lines(k);
  for (const auto& v : r.vertices())
    for (const auto& l : lines)
      if (l.side(v) < 0) return false;
  if (!r.bounded()) {
    // Recession directions of r must be recession directions of k.
    for (const Vec* d : {&*r.entry_ray(), &*r.exit_ray()})
      for (const auto& l : lines)
        if (dot(l.normal(), *d).sign() < 0) return false;
  }
  return true;
}

// Do the open convex regions a and b miss each other? Exact separating-axis test.
inline bool disjoint_convex(const Region& a, const Region& b) {
  auto separated_by = [](const Region& k, const Region& other) {
    for (const auto& l : edge_lines(k)) {
      if (region_side(other, l) < 0) return true;
      bool touching = true;  // everything of `other` on or below the line
      for (const auto& v : other.vertices()) touching = touching && l.side(v) <= 0;
      if (!other.bounded()) {
        for (const Vec* d : {&*other.entry_ray(), &*other.exit_ray()})
          touching = touching && dot(l.normal(), *d).sign() <= 0;
      }
      if (touching) return true;
    }
    return false;
  };
  return separated_by(a, b) || separated_by(b, a);
}

namespace detail {

// Is the clockwise angle from r to a smaller than from r to b? Angles in (0, 2pi].
inline bool clockwise_before(const Vec& r, const Vec& a, const Vec& b) {
  auto key = [&r](const Vec& v) {
    // 0: strictly clockwise within a half-turn, 1: exactly opposite, 2: counterclockwise side, 3: same as r
    int c = cross(r, v).sign();
    if (c < 0) return 0;
    if (c == 0) return dot(r, v).sign() < 0 ? 1 : 3;
    return 2;
  };
  int ka = key(a), kb = key(b);
  if (ka != kb) return ka < kb;
  if (ka == 0 || ka == 2) return cross(a, b).sign() < 0;
  return false;
}

}  // namespace detail

// Union of bounded regions with pairwise disjoint interiors, returned as its
// connected pieces. Pieces must not enclose holes.
inline std::vector<Region> merge_regions(const std::vector<Region>& rs) {
  std::vector<Point> all;
  for (const auto& r : rs) {
    if (!r.bounded()) throw DomainError("merge_regions: unbounded region");
    all.insert(all.end(), r.vertices().begin(), r.vertices().end());
  }
  struct Edge {
    Point a, b;
  };
  std::vector<Edge> edges;
  for (const auto& r : rs) {
    const auto& v = r.vertices();
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % n];
      Vec d = b - a;
      std::vector<std::pair<QS3, Point>> cuts;
      for (const auto& p : all) {
        if (!cross(d, p - a).is_zero()) continue;
        QS3 t = dot(p - a, d);
        if (t.sign() > 0 && (t - norm2(d)).sign() < 0) cuts.push_back({t, p});
      }
      std::sort(cuts.begin(), cuts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      Point prev = a;
      for (const auto& [t, p] : cuts) {
        if (p == prev) continue;
        edges.push_back({prev, p});
        prev = p;
      }
      edges.push_back({prev, b});
    }
  }
  // Interior edges appear once in each direction and cancel.
  std::unordered_map<Point, std::vector<std::size_t>, PointHash> out_of;
  for (std::size_t i = 0; i < edges.size(); ++i) out_of[edges[i].a].push_back(i);
  std::vector<bool> dead(edges.size(), false);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (dead[i]) continue;
    for (std::size_t j : out_of[edges[i].b]) {
      if (!dead[j] && j != i && edges[j].b == edges[i].a) {
        dead[i] = dead[j] = true;
        break;
      }
    }
  }
  std::vector<Region> result;
  std::vector<bool> used(edges.size(), false);
  for (std::size_t s = 0; s < edges.size(); ++s) {
    if (dead[s] || used[s]) continue;
    std::vector<Point> cycle;
    std::size_t cur = s;
    while (true) {
      used[cur] = true;
      cycle.push_back(edges[cur].a);
      const Point& at = edges[cur].b;
      if (at == edges[s].a) {
        // Close the cycle only if no other unused edge continues from here.
        bool more = false;
        for (std::size_t j : out_of[at]) more = more || (!dead[j] && !used[j]);
        if (!more) break;
      }
      Vec back = edges[cur].a - at;
      std::optional<std::size_t> next;
      for (std::size_t j : out_of[at]) {
        if (dead[j] || used[j]) continue;
        if (!next || detail::clockwise_before(back, edges[j].b - at, edges[*next].b - at)) next = j;
      }
      if (!next) {
        if (at == edges[s].a) break;
        throw CheckFailure("merge_regions: open boundary");
      }
      cur = *next;
    }
    result.push_back(Region::polygon(std::move(cycle)));
  }
  return result;
}

inline QS3 total_area(const std::vector<Region>& rs) {
  QS3 s;
  for (const auto& r : rs) s += area(r);
  return s;
}

// Uniform-ish exact points in the interior of a bounded region.
inline std::vector<Point> sample_interior_points(const Region& r, std::size_t n, std::uint64_t seed) {
  std::vector<Region> parts = r.convex() ? std::vector<Region>{r} : convex_decomposition(r);
  std::vector<double> weights;
  for (const auto& p : parts) weights.push_back(area(p).to_double());
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<long> coord(1, 1000);
  std::vector<Point> out;
  while (out.size() < n) {
    const Region& part = parts[pick(rng)];
    const auto& v = part.vertices();
    // Random strictly positive barycentric weights on the vertices.
    Point acc{QS3(0), QS3(0)};
    long total = 0;
    for (const auto& q : v) {
      long c = coord(rng);
      total += c;
      acc = acc + QS3(c) * q;
    }
    out.push_back(QS3(make_rat(1, total)) * acc);
  }
  return out;
}

}  // namespace dodeca

template <>
struct std::hash<dodeca::Region> {
  std::size_t operator()(const dodeca::Region& r) const noexcept { return r.hash(); }
};
template <>
struct std::hash<dodeca::Point> {
  std::size_t operator()(const dodeca::Point& p) const noexcept { return p.hash(); }
};
