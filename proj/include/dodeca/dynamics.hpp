#pragma once

// Periodic components (Algorithm 1), first-return maps (Algorithm 2) and the
// partition of Z' into return tubes and periodic tubes.
//
// Everything runs on a PiecewiseMap, so the same code handles T' on the wedge
// and any induced map built from it.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dodeca/billiard.hpp"
#include "dodeca/errors.hpp"
#include "dodeca/geometry.hpp"
#include "dodeca/piecewise.hpp"

namespace dodeca {

struct Component {
  Region region;
  std::size_t per_tprime = 0;  // T'^per maps the region onto itself
  int rotation_l = 0;  // ... as a rotation by l*pi/6 about `center`
  Point center;
  std::vector<int> code;  // one period of the itinerary
  std::size_t weight = 0;  // T'-steps in one period (per_tprime for T' itself)
};

namespace detail {

inline Region holding(std::vector<Region> parts, const Point& q) {
  if (parts.size() == 1) return std::move(parts.front());
  for (auto& r : parts)
    if (classify_point(r, q) == Location::interior) return std::move(r);
  throw CheckFailure("holding: no part contains the orbit point");
}

// The component of u ∩ piece(i) holding q; sets `cut` if anything was removed.
inline Region clip_to_piece(Region u, const PiecewiseMap& m, std::size_t i, const Point& q, bool& cut) {
  const Region& piece = m.piece(i).domain;
  if (piece.convex()) {
    for (const auto& l : edge_lines(piece)) {
      if (region_side(u, l) > 0) continue;
      u = holding(positive_parts(u, l.normal(), l.c), q);
      cut = true;
    }
    return u;
  }
  std::vector<Region> bits;
  for (const auto& c : m.convex_parts(i))
    for (auto& b : intersect_convex(u, c)) bits.push_back(std::move(b));
  Region r = holding(merge_regions(bits), q);
  if (!(r == u)) cut = true;
  return r;
}

}  // namespace detail

// Algorithm 1. The region sequence U_{k+1} = T'(U_k ∩ alpha(p_k)) only shrinks
// when a cut happens; once cuts stop the sequence is periodic, so comparing
// against the region right after the last cut detects the recurrence.
inline Component find_periodic_component(const PiecewiseMap& m, const Point& p,
                                         std::size_t max_iter = default_cap(1000000)) {
  if (classify_point(m.domain(), p) != Location::interior)
    throw DomainError("find_periodic_component: point not inside the domain");
  Region u = m.domain();
  Point q = p;
  AffMap g = AffMap::identity();  // T'^k along the orbit of p
  AffMap g_anchor = g;
  AffMap f = g;  // from the anchor to the current step
  Region anchor = u;
  std::size_t anchor_step = 0;
  std::vector<int> symbols;
  std::vector<std::size_t> weights;
  for (std::size_t k = 0; k < max_iter; ++k) {
    auto idx = m.locate(q);
    if (!idx) throw GraneError("find_periodic_component: orbit hits a piece boundary", 0, k);
    const MapPiece& piece = m.piece(*idx);
    bool cut = false;
    u = apply_map(piece.map, detail::clip_to_piece(std::move(u), m, *idx, q, cut));
    q = piece.map(q);
    g = piece.map.after(g);
    f = piece.map.after(f);
    symbols.push_back(piece.symbol);
    weights.push_back(piece.weight);
    if (cut) {
      anchor = u;
      anchor_step = k + 1;
      g_anchor = g;
      f = AffMap::identity();
      continue;
    }
    if (u.bounded() && u == anchor) {
      Component c;
      c.per_tprime = k + 1 - anchor_step;
      c.region = apply_map(g_anchor.inverse(), anchor);
      c.center = area_and_centroid(c.region).second;
      auto steps = f.rotation_steps();
      if (!steps) throw CheckFailure("find_periodic_component: return map is not a rotation");
      c.rotation_l = *steps;
      if (f(area_and_centroid(anchor).second) != area_and_centroid(anchor).second)
        throw CheckFailure("find_periodic_component: return map does not fix the centroid");
      c.code.assign(symbols.begin(), symbols.begin() + static_cast<std::ptrdiff_t>(c.per_tprime));
      c.weight = std::accumulate(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(c.per_tprime),
                                 std::size_t{0});
      return c;
    }
  }
  throw InconclusiveError("find_periodic_component: no recurrence within the iteration cap", max_iter);
}

inline Component find_periodic_component(const WedgeSystem& w, const Point& p,
                                         std::size_t max_iter = default_cap(1000000)) {
  return find_periodic_component(w.Tp, p, max_iter);
}

// Periods of a component's points, under T' and under T.
struct ComponentPeriods {
  std::size_t tprime_center = 0;
  std::size_t tprime_other = 0;
  std::size_t t_component = 0;  // per_T(U), also the period of the centre
  std::size_t t_other = 0;
  bool centrally_symmetric = false;
};

inline std::size_t gcd12(long long v) { return static_cast<std::size_t>(std::gcd(((v % 12) + 12) % 12, 12LL)); }

// T'^n = R^{-s} T^n along an orbit with symbol sum s, so a point with
// T'-period n has T-period n * 12 / gcd(s, 12) (it is not the table centre).
inline std::size_t t_period_from(std::size_t n_tprime, long long symbol_sum) {
  return n_tprime * 12 / gcd12(symbol_sum);
}

inline ComponentPeriods component_periods(const Component& c) {
  ComponentPeriods out;
  out.tprime_center = c.per_tprime;
  out.tprime_other = c.per_tprime * 12 / gcd12(c.rotation_l);
  long long s = 0;
  for (int v : c.code) s += v;
  out.t_component = t_period_from(c.per_tprime, s);
  out.centrally_symmetric = apply_map(AffMap::point_reflection(c.center), c.region) == c.region;
  out.t_other = (out.centrally_symmetric && out.t_component % 2 == 1) ? 2 * out.t_component : out.t_component;
  return out;
}

// Exact period of a point under T' (0 if none up to the cap).
inline std::size_t tprime_period(const WedgeSystem& w, const Point& p, std::size_t cap) {
  Point q = p;
  for (std::size_t k = 1; k <= cap; ++k) {
    q = induced_step(w, q).point;
    if (q == p) return k;
  }
  return 0;
}

// Exact period of a point under T itself (0 if none up to the cap).
inline std::size_t t_period(const Table& t, const Point& p, std::size_t cap) {
  Point q = p;
  for (std::size_t k = 1; k <= cap; ++k) {
    q = billiard_step(t, q);
    if (q == p) return k;
  }
  return 0;
}

struct ReturnPiece {
  Region source;
  Region target;
  AffMap map;
  std::size_t time = 0;  // applications of the map the system was built from
  std::size_t weight = 0;  // the same time counted in T'-steps
};

struct ReturnSystem {
  Region domain;
  std::vector<ReturnPiece> pieces;  // one per maximal region with a single return map
  std::vector<ReturnPiece> cells;   // one per return code, before merging
  std::size_t events = 0;
};

namespace detail {

enum class Relation { inside, disjoint, straddles };

// A bounded region split into convex parts, for exact containment tests.
struct Decomposed {
  Region whole;
  std::vector<Region> parts;
  explicit Decomposed(Region r) : whole(std::move(r)) {
    parts = whole.convex() ? std::vector<Region>{whole} : convex_decomposition(whole);
  }
};

// How the bounded region r sits relative to s.
inline Relation relation_to(const Region& r, const Decomposed& s) {
  if (r.convex()) {
    bool all_disjoint = true;
    for (const auto& p : s.parts) {
      if (inside_convex_closure(r, p)) return Relation::inside;
      all_disjoint = all_disjoint && disjoint_convex(r, p);
    }
    if (all_disjoint) return Relation::disjoint;
  }
  QS3 inter;
  for (const auto& p : s.parts) inter += total_area(intersect_convex(r, p));
  if (inter.is_zero()) return Relation::disjoint;
  if (inter == area(r)) return Relation::inside;
  return Relation::straddles;
}

}  // namespace detail

// Algorithm 2: the first-return map of m to the bounded region s.
inline ReturnSystem first_return_map(const PiecewiseMap& m, const Region& s,
                                     std::size_t max_events = default_cap(100000)) {
  if (!s.bounded()) throw DomainError("first_return_map: region must be bounded");
  const detail::Decomposed sd(s);
  struct Pending {
    Region r;
    AffMap f;
    std::size_t time;
    std::size_t weight;
  };
  ReturnSystem out;
  out.domain = s;
  std::deque<Pending> todo;
  todo.push_back({s, AffMap::identity(), 0, 0});
  while (!todo.empty()) {
    Pending cur = std::move(todo.front());
    todo.pop_front();
    for (auto& [part, idx] : m.partition(cur.r)) {
      if (++out.events > max_events)
        throw InconclusiveError("first_return_map: piece events exceed the cap", max_events);
      const MapPiece& piece = m.piece(idx);
      Region img = apply_map(piece.map, part);
      AffMap f = piece.map.after(cur.f);
      std::size_t wt = cur.weight + piece.weight;
      switch (detail::relation_to(img, sd)) {
        case detail::Relation::inside:
          out.cells.push_back({apply_map(f.inverse(), img), img, f, cur.time + 1, wt});
          break;
        case detail::Relation::disjoint:
          todo.push_back({std::move(img), f, cur.time + 1, wt});
          break;
        case detail::Relation::straddles:
          throw CheckFailure("first_return_map: an image straddles the region boundary (no nice self-return)");
      }
    }
  }
  // Merge cells that share a return map and time into maximal pieces.
  std::vector<bool> done(out.cells.size(), false);
  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    if (done[i]) continue;
    std::vector<Region> group;
    for (std::size_t j = i; j < out.cells.size(); ++j) {
      if (!done[j] && out.cells[j].map == out.cells[i].map && out.cells[j].time == out.cells[i].time) {
        group.push_back(out.cells[j].source);
        done[j] = true;
      }
    }
    for (auto& src : merge_regions(group)) {
      Region tgt = apply_map(out.cells[i].map, src);
      out.pieces.push_back({std::move(src), std::move(tgt), out.cells[i].map, out.cells[i].time, out.cells[i].weight});
    }
  }
  std::sort(out.pieces.begin(), out.pieces.end(), [](const ReturnPiece& a, const ReturnPiece& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.source.vertices().front().x < b.source.vertices().front().x;
  });
  return out;
}

inline ReturnSystem first_return_map(const WedgeSystem& w, const Region& s,
                                     std::size_t max_events = default_cap(100000)) {
  return first_return_map(w.Tp, s, max_events);
}

// The induced map as a piecewise map on S; weights count T'-steps.
inline PiecewiseMap return_map(const ReturnSystem& rs) {
  std::vector<MapPiece> pieces;
  int k = 1;
  for (const auto& p : rs.pieces) pieces.push_back({p.source, p.map, k++, p.weight});
  return PiecewiseMap(rs.domain, std::move(pieces));
}

namespace detail {

// The single piece holding r; throws if r is split.
inline std::size_t piece_of(const PiecewiseMap& m, const Region& r, const char* who) {
  auto parts = m.partition(r);
  if (parts.empty()) throw CheckFailure(std::string(who) + ": region leaves the domain");
  for (const auto& pr : parts)
    if (pr.second != parts.front().second) throw CheckFailure(std::string(who) + ": a region is split");
  return parts.front().second;
}

}  // namespace detail

// m^j(source) for j < time, checking that no cut ever splits the region and
// that no intermediate image enters S.
inline std::vector<Region> tube(const PiecewiseMap& m, const ReturnPiece& p, const detail::Decomposed& s) {
  std::vector<Region> out;
  Region cur = p.source;
  for (std::size_t j = 0; j < p.time; ++j) {
    if (j > 0 && detail::relation_to(cur, s) != detail::Relation::disjoint)
      throw CheckFailure("tube: an intermediate image meets the region");
    std::size_t i = detail::piece_of(m, cur, "tube");
    out.push_back(cur);
    cur = apply_map(m.piece(i).map, cur);
  }
  if (!(cur == p.target)) throw CheckFailure("tube: the cell does not land on its target");
  return out;
}

// The orbit of a periodic component: m^j(U) for j < per_tprime.
inline std::vector<Region> component_orbit(const PiecewiseMap& m, const Component& c) {
  std::vector<Region> out;
  Region cur = c.region;
  for (std::size_t j = 0; j < c.per_tprime; ++j) {
    out.push_back(cur);
    cur = apply_map(m.piece(detail::piece_of(m, cur, "component_orbit")).map, cur);
  }
  if (!(cur == c.region)) throw CheckFailure("component_orbit: the orbit does not close up");
  return out;
}

inline std::vector<Region> component_orbit(const WedgeSystem& w, const Component& c) {
  return component_orbit(w.Tp, c);
}

namespace detail {

inline bool boxes_overlap(const Region::Box& a, const Region::Box& b) {
  return !(a.x1 < b.x0 - 1e-9 || b.x1 < a.x0 - 1e-9 || a.y1 < b.y0 - 1e-9 || b.y1 < a.y0 - 1e-9);
}

// Convex fragments of a bounded region from which closed pieces get removed.
class Remainder {
 public:
  explicit Remainder(const Region& r) {
    for (auto& p : r.convex() ? std::vector<Region>{r} : convex_decomposition(r)) add(std::move(p));
  }

  void subtract(const Region& k) {
    if (!k.convex()) {
      for (const auto& part : convex_decomposition(k)) subtract(part);
      return;
    }
    auto kb = k.float_box();
    std::vector<Region> keep;
    std::vector<Region::Box> keep_boxes;
    for (std::size_t i = 0; i < frags_.size(); ++i) {
      if (!boxes_overlap(boxes_[i], kb) || disjoint_convex(frags_[i], k)) {
        keep.push_back(std::move(frags_[i]));
        keep_boxes.push_back(boxes_[i]);
        continue;
      }
      for (auto& piece : subtract_convex(frags_[i], k)) {
        keep_boxes.push_back(piece.float_box());
        keep.push_back(std::move(piece));
      }
    }
    frags_ = std::move(keep);
    boxes_ = std::move(keep_boxes);
  }

  const std::vector<Region>& fragments() const { return frags_; }
  bool empty() const { return frags_.empty(); }

 private:
  void add(Region r) {
    boxes_.push_back(r.float_box());
    frags_.push_back(std::move(r));
  }
  std::vector<Region> frags_;
  std::vector<Region::Box> boxes_;
};

// Candidate seeds inside a convex fragment: its centroid, then centroids of
// fan triangles, so a seed on a component boundary can be replaced.
inline std::vector<Point> seeds_in(const Region& frag) {
  std::vector<Point> out{area_and_centroid(frag).second};
  const auto& v = frag.vertices();
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    out.push_back(QS3(make_rat(1, 3)) * (v[0] + v[k] + v[k + 1]));
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(QS3(make_rat(3, 4)) * out.front() + QS3(make_rat(1, 4)) * v[k]);
  return out;
}

}  // namespace detail

struct PeriodicTube {
  Component component;
  QS3 tube_area;  // per_tprime * area
  std::vector<Region> orbit;
};

struct PartitionReport {
  ReturnSystem system;
  QS3 domain_area;  // area of the ambient invariant region
  QS3 return_tube_area;
  QS3 periodic_tube_area;
  std::vector<std::vector<Region>> tubes;  // aligned with system.cells
  std::vector<PeriodicTube> periodic;  // one representative per orbit
  bool area_identity = false;
  std::vector<std::size_t> periods() const {
    std::vector<std::size_t> out;
    for (const auto& p : periodic) out.push_back(p.component.per_tprime);
    return out;
  }
};

// ambient = (return tubes of S) ∪ (orbits of the periodic components that
// avoid S), checked by exact subtraction and an exact area identity. Areas
// are plain areas in the ambient region, not weighted by T'-time.
inline PartitionReport verify_partition(const PiecewiseMap& m, const Region& ambient, const Region& s,
                                        std::size_t max_events = default_cap(100000),
                                        std::size_t max_iter = default_cap(1000000)) {
  PartitionReport rep;
  rep.system = first_return_map(m, s, max_events);
  rep.domain_area = area(ambient);
  const detail::Decomposed sd(s);
  detail::Remainder rest(ambient);
  for (const auto& cell : rep.system.cells) {
    rep.tubes.push_back(tube(m, cell, sd));
    for (const auto& r : rep.tubes.back()) {
      rep.return_tube_area += area(r);
      rest.subtract(r);
    }
  }
  std::size_t guard = 0;
  while (!rest.empty()) {
    if (++guard > 100000) throw InconclusiveError("verify_partition: too many holes", guard);
    const Region frag = rest.fragments().front();
    std::optional<Component> found;
    for (const auto& seed : detail::seeds_in(frag)) {
      try {
        found = find_periodic_component(m, seed, max_iter);
        break;
      } catch (const GraneError&) {
        continue;
      }
    }
    if (!found) throw InconclusiveError("verify_partition: no usable seed in a hole", guard);
    auto orbit = component_orbit(m, *found);
    for (const auto& r : orbit) {
      if (detail::relation_to(r, sd) != detail::Relation::disjoint)
        throw CheckFailure("verify_partition: a periodic component in a hole visits S");
      rest.subtract(r);
    }
    QS3 a = area(found->region) * QS3(static_cast<long>(found->per_tprime));
    rep.periodic_tube_area += a;
    rep.periodic.push_back({std::move(*found), a, std::move(orbit)});
  }
  rep.area_identity = rep.domain_area == rep.return_tube_area + rep.periodic_tube_area;
  return rep;
}

inline PartitionReport verify_partition(const WedgeSystem& w, const Region& s,
                                        std::size_t max_events = default_cap(100000),
                                        std::size_t max_iter = default_cap(1000000)) {
  return verify_partition(w.Tp, w.Zp, s, max_events, max_iter);
}

}  // namespace dodeca
