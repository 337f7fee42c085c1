#pragma once

// The regular 12-gon table, the outer billiard map T, and the induced map T'
// on the wedge P2 P1 Q2.
//
// Gauge: circumradius 2, centre at the origin, A_k at angle 30k degrees.

#include <array>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "dodeca/errors.hpp"
#include "dodeca/geometry.hpp"
#include "dodeca/piecewise.hpp"

namespace dodeca {

inline int mod12(int i) { return ((i % 12) + 12) % 12; }

inline Point line_intersection(const Line& l1, const Line& l2) {
  QS3 det = l1.a * l2.b - l1.b * l2.a;
  if (det.is_zero()) throw DomainError("line_intersection: parallel lines");
  return {(l1.c * l2.b - l1.b * l2.c) / det, (l1.a * l2.c - l1.c * l2.a) / det};
}

struct Table {
  std::array<Point, 12> A;
  std::array<Line, 12> l;  // l[i] through A_i and A_{i+1}
  std::array<Point, 12> C;  // l[i-2] ∩ l[i+2]
  std::vector<Region> gamma;  // table reflected through C_i
  std::vector<Region> V;  // T is the reflection in A_i on int(V_i)
  Region polygon;
  Region Z;  // the 60-vertex invariant region

  // A^i_k = 2 C_i - A_k.
  Point mirrored(int i, int k) const { return QS3(2) * C[mod12(i)] - A[mod12(k)]; }
  // The same vertices labelled relative to gamma^i: A^i_k = 2 C_i - A_{k+i-3}.
  // Both labellings agree for i = 3.
  Point mirrored_relative(int i, int k) const { return mirrored(i, k + i - 3); }
};

inline Table build_table() {
  std::vector<Point> a;
  for (int k = 0; k < 12; ++k) a.push_back(AffMap::rotation(k)(Point{QS3(2), QS3(0)}));
  std::array<Point, 12> A;
  std::array<Line, 12> l;
  std::array<Point, 12> C;
  for (int k = 0; k < 12; ++k) A[k] = a[k];
  for (int k = 0; k < 12; ++k) l[k] = Line::through(A[k], A[mod12(k + 1)]);
  for (int k = 0; k < 12; ++k) C[k] = line_intersection(l[mod12(k - 2)], l[mod12(k + 2)]);
  Region poly = Region::polygon(a);
  Table t{A, l, C, {}, {}, poly, poly};
  for (int i = 0; i < 12; ++i) t.gamma.push_back(apply_map(AffMap::point_reflection(C[i]), poly));
  for (int i = 0; i < 12; ++i) {
    // Angle A_{i-1} A_i A^{i-2}_i.
    t.V.push_back(Region::unbounded({A[i]}, t.mirrored(i - 2, i) - A[i], A[mod12(i - 1)] - A[i]));
  }
  std::vector<Point> z;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 5; ++j) z.push_back(t.mirrored(i, i + 3 - j));
  t.Z = Region::polygon(z);
  return t;
}

enum class Direction { forward, backward };

// One step of T (or T^-1) from a point outside the closed table.
inline Point billiard_step(const Table& t, const Point& p, Direction dir = Direction::forward) {
  if (classify_point(t.polygon, p) != Location::exterior)
    throw DomainError("billiard_step: point is not outside the table");
  std::optional<int> on_edge;
  for (int i = 0; i < 12; ++i) {
    Region sector = dir == Direction::forward ? t.V[i] : apply_map(AffMap::point_reflection(t.A[i]), t.V[i]);
    Location loc = classify_point(sector, p);
    if (loc == Location::interior) return QS3(2) * t.A[i] - p;
    if (loc == Location::boundary && !on_edge) on_edge = i;
  }
  throw GraneError("billiard_step: point on the boundary of sector V_" + std::to_string(on_edge.value_or(-1)),
                   on_edge.value_or(-1));
}

struct WedgeSystem {
  Table table;
  // Index 0 unused so that P[1..5], Q[2..6], O[1..5], alpha[1..6] read as in the construction.
  std::array<Point, 7> P;
  std::array<Point, 7> Q;
  std::array<Point, 7> O;
  std::array<std::optional<Region>, 7> alpha;
  std::array<AffMap, 7> maps;
  Region wedge;
  Region Zp;  // hexagon A1 A^3_2 ... A^3_6
  AffMap H;  // translation taking A1 to A^3_1
  PiecewiseMap Tp;  // symbols 1..6
  PiecewiseMap Tp_inv;

  const Region& piece(int i) const { return *alpha.at(static_cast<std::size_t>(i)); }
};

inline WedgeSystem build_wedge_system(Table t) {
  WedgeSystem w;
  const auto& A = t.A;
  for (int k = 1; k <= 5; ++k) w.P[k] = line_intersection(t.l[0], t.l[k]);
  for (int k = 2; k <= 6; ++k) w.Q[k] = line_intersection(t.l[1], t.l[k]);
  const auto& P = w.P;
  const auto& Q = w.Q;
  w.wedge = Region::unbounded({A[1]}, A[2] - A[1], A[1] - A[0]);
  w.alpha[1] = Region::polygon({P[1], P[2], Q[2]});
  w.alpha[2] = Region::polygon({P[2], P[3], Q[3], Q[2]});
  w.alpha[3] = Region::polygon({P[3], P[4], Q[4], Q[3]});
  w.alpha[4] = Region::polygon({P[4], P[5], Q[5], Q[4]});
  w.alpha[5] = Region::unbounded({Q[6], Q[5], P[5]}, t.mirrored(3, 0) - Q[6], t.mirrored(3, 7) - P[5]);
  w.alpha[6] = Region::unbounded({Q[6]}, t.mirrored(4, 8) - Q[6], t.mirrored(3, 0) - Q[6]);
  for (int i = 1; i <= 6; ++i) {
    // Reflect in A_{i+1}, then rotate back by -i steps.
    w.maps[i] = AffMap::rotation(-i).after(AffMap::point_reflection(A[i + 1]));
  }
  for (int i = 1; i <= 5; ++i) w.O[i] = w.maps[i].fixed_point();
  std::vector<Point> zp{A[1]};
  for (int k = 2; k <= 6; ++k) zp.push_back(t.mirrored(3, k));
  w.Zp = Region::polygon(zp);
  w.H = AffMap::translation(t.mirrored(3, 1) - A[1]);

  std::vector<MapPiece> pieces;
  for (int i = 1; i <= 6; ++i) pieces.push_back({*w.alpha[i], w.maps[i], i});
  std::vector<Line> cuts;
  for (int k = 2; k <= 6; ++k) cuts.push_back(t.l[k]);
  w.Tp = PiecewiseMap(w.wedge, std::move(pieces), std::move(cuts));
  w.Tp_inv = w.Tp.inverse();
  w.table = std::move(t);
  return w;
}

inline const WedgeSystem& standard_system() {
  static const WedgeSystem w = build_wedge_system(build_table());
  return w;
}

struct Step {
  Point point;
  int symbol;
};

// One step of T' (or its inverse) on the open wedge.
inline Step induced_step(const WedgeSystem& w, const Point& p, Direction dir = Direction::forward) {
  const PiecewiseMap& m = dir == Direction::forward ? w.Tp : w.Tp_inv;
  if (auto i = m.locate(p)) {
    const MapPiece& piece = m.piece(*i);
    return {piece.map(p), piece.symbol};
  }
  Location loc = classify_point(w.wedge, p);
  if (loc == Location::exterior) throw DomainError("induced_step: point outside the wedge");
  int where = 0;
  for (const auto& piece : m.pieces()) {
    if (classify_point(piece.domain, p) == Location::boundary) {
      where = piece.symbol;
      break;
    }
  }
  throw GraneError("induced_step: point on a piece boundary", where);
}

struct Itinerary {
  std::vector<int> symbols;  // u_{-backward} ... u_{forward-1}
  std::size_t backward = 0;  // index of u_0 in `symbols`
  std::size_t forward = 0;
  Point first;  // T'^{-backward}(p)
  Point last;   // T'^{forward}(p)
  std::optional<std::string> stopped;  // set when a boundary was hit
};

inline std::string symbols_str(const std::vector<int>& s) {
  std::string out;
  for (int v : s) out += std::to_string(v);
  return out;
}

// Itinerary of p; stops early (and records why) if a boundary is hit.
inline Itinerary compute_itinerary(const WedgeSystem& w, const Point& p, std::size_t n_fwd, std::size_t n_bwd = 0) {
  Itinerary it;
  it.first = p;
  it.last = p;
  std::vector<int> back;
  try {
    for (std::size_t k = 0; k < n_bwd; ++k) {
      Step s = induced_step(w, it.first, Direction::backward);
      back.push_back(s.symbol);
      it.first = s.point;
      ++it.backward;
    }
  } catch (const GraneError& e) {
    it.stopped = std::string("backward step ") + std::to_string(it.backward) + ": " + e.what();
  }
  it.symbols.assign(back.rbegin(), back.rend());
  try {
    for (std::size_t k = 0; k < n_fwd; ++k) {
      Step s = induced_step(w, it.last, Direction::forward);
      it.symbols.push_back(s.symbol);
      it.last = s.point;
      ++it.forward;
    }
  } catch (const GraneError& e) {
    if (!it.stopped) it.stopped = std::string("forward step ") + std::to_string(it.forward) + ": " + e.what();
  }
  return it;
}

inline std::size_t default_cap(std::size_t fallback) {
  if (const char* env = std::getenv("DODECA_MAX_ITER")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

// First return of T' to alpha_6.
inline Point T6(const WedgeSystem& w, const Point& p, std::size_t max_iter = default_cap(1000000)) {
  if (classify_point(w.piece(6), p) != Location::interior) throw DomainError("T6: point not inside alpha_6");
  Point q = p;
  for (std::size_t k = 0; k < max_iter; ++k) {
    q = induced_step(w, q).point;
    if (classify_point(w.piece(6), q) == Location::interior) return q;
  }
  throw InconclusiveError("T6: no return within the iteration cap", max_iter);
}

}  // namespace dodeca
