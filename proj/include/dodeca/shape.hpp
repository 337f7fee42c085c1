#pragma once

// Exact shape predicates for polygons: side lengths, interior angles and
// incidence with other polygons' sides.

#include <cstddef>
#include <vector>

#include "dodeca/geometry.hpp"

namespace dodeca {

inline std::vector<QS3> squared_sides(const Region& r) {
  const auto& v = r.vertices();
  std::vector<QS3> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(norm2(v[(i + 1) % v.size()] - v[i]));
  return out;
}

inline bool equilateral(const Region& r) {
  auto s = squared_sides(r);
  for (const auto& x : s)
    if (x != s.front()) return false;
  return true;
}

// Whether the interior angle at vertex i has cosine c (the region must be convex).
inline bool angle_cos_is(const Region& r, std::size_t i, const QS3& c) {
  const auto& v = r.vertices();
  std::size_t n = v.size();
  Vec u = v[(i + n - 1) % n] - v[i];
  Vec w = v[(i + 1) % n] - v[i];
  QS3 d = dot(u, w);
  if (d.sign() != c.sign()) return false;
  return d * d == c * c * norm2(u) * norm2(w);
}

inline std::size_t vertex_index(const Region& r, const Point& p) {
  const auto& v = r.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == p) return i;
  return v.size();
}

// Every side line of `outer` carries a full side of `inner`.
inline bool inscribed(const Region& inner, const Region& outer) {
  const auto& v = inner.vertices();
  for (const auto& l : edge_lines(outer)) {
    bool touches = false;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (l.side(v[i]) == 0 && l.side(v[(i + 1) % v.size()]) == 0) touches = true;
    if (!touches) return false;
  }
  return true;
}

}  // namespace dodeca
