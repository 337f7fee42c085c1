#pragma once

// Renormalization of T' on Z': the homotheties Gamma_1 and Gamma_4 about P1,
// the nested regions Z'_4 and Z'_14, the conjugacies between their induced
// maps, an aperiodic point and the red/green refinement.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dodeca/billiard.hpp"
#include "dodeca/dynamics.hpp"
#include "dodeca/errors.hpp"
#include "dodeca/geometry.hpp"
#include "dodeca/piecewise.hpp"

namespace dodeca {

// Ratio 7 - 4 sqrt3; takes O5 to O1.
inline AffMap gamma1(const WedgeSystem& w) { return AffMap::homothety(w.P[1], QS3(7, -4)); }
// Ratio -3 + 2 sqrt3; takes O5 to O4.
inline AffMap gamma4(const WedgeSystem& w) { return AffMap::homothety(w.P[1], QS3(-3, 2)); }

inline Region zprime4(const WedgeSystem& w) { return apply_map(gamma4(w), w.Zp); }
inline Region zprime14(const WedgeSystem& w) { return apply_map(gamma1(w), zprime4(w)); }

namespace detail {

// T'^-1 on a region that no cut splits.
inline AffMap unsplit_inverse_step(const WedgeSystem& w, const Region& r) {
  return w.Tp_inv.piece(piece_of(w.Tp_inv, r, "unsplit_inverse_step")).map;
}

}  // namespace detail

struct SimilaritySystem {
  AffMap gamma1;
  AffMap gamma4;
  Region Z1, Z4, Z14, X;
  AffMap U;  // T'^-2 on Z'_14
  AffMap gammaX;  // U o Gamma_1, takes Z'_4 onto X
};

// Throws CheckFailure if T'^-2 splits Z'_14.
inline SimilaritySystem build_similarity(const WedgeSystem& w) {
  SimilaritySystem s;
  s.gamma1 = gamma1(w);
  s.gamma4 = gamma4(w);
  s.Z1 = apply_map(s.gamma1, w.Zp);
  s.Z4 = zprime4(w);
  s.Z14 = zprime14(w);
  AffMap u1 = detail::unsplit_inverse_step(w, s.Z14);
  AffMap u2 = detail::unsplit_inverse_step(w, apply_map(u1, s.Z14));
  s.U = u2.after(u1);
  s.X = apply_map(s.U, s.Z14);
  s.gammaX = s.U.after(s.gamma1);
  return s;
}

// g carries the system `a` on S onto the system `b` on g(S), piece by piece.
struct ConjugacyReport {
  bool pieces_match = false;
  std::size_t samples = 0;
  std::size_t undefined = 0;  // samples where both sides were undefined
  std::optional<Point> counterexample;
  bool ok() const { return pieces_match && !counterexample; }
};


inline ConjugacyReport verify_conjugacy(const ReturnSystem& a, const ReturnSystem& b, const AffMap& g,
                                        std::size_t samples, std::uint64_t seed = 1) {
  ConjugacyReport rep;
  AffMap gi = g.inverse();
  rep.pieces_match = a.pieces.size() == b.pieces.size() && apply_map(g, a.domain) == b.domain;
  for (const auto& pa : a.pieces) {
    if (!rep.pieces_match) break;
    Region src = apply_map(g, pa.source);
    Region tgt = apply_map(g, pa.target);
    AffMap m = g.after(pa.map).after(gi);
    bool found = false;
    for (const auto& pb : b.pieces)
      if (pb.source == src && pb.target == tgt && pb.map == m) found = true;
    rep.pieces_match = found;
  }
  PiecewiseMap fa = return_map(a);
  PiecewiseMap fb = return_map(b);
  for (const auto& p : sample_interior_points(a.domain, samples, seed)) {
    ++rep.samples;
    Point q = g(p);
    auto ia = fa.locate(p);
    auto ib = fb.locate(q);
    if (!ia && !ib) {
      ++rep.undefined;
      continue;
    }
    if (!ia || !ib || g(fa.piece(*ia).map(p)) != fb.piece(*ib).map(q)) {
      rep.counterexample = p;
      break;
    }
  }
  return rep;
}

struct AperiodicWitness {
  Point y;
  std::size_t steps = 0;  // T'^n(y) != y checked for 1 <= n <= steps
  std::optional<std::size_t> boundary_hit;  // step at which the orbit met a piece boundary
  std::size_t depth = 0;
  bool nested = false;  // y in int(Gamma_X^k(X)) and strict nesting for k <= depth
  // 2^depth: each nesting level at least doubles a hypothetical period.
  std::size_t period_lower_bound = 0;
  bool ok() const { return nested && !boundary_hit; }
};

inline AperiodicWitness aperiodic_witness(const WedgeSystem& w, const SimilaritySystem& s, std::size_t steps,
                                          std::size_t depth) {
  AperiodicWitness out;
  if (s.gammaX.det() >= QS3(1)) throw DomainError("aperiodic_witness: Gamma_X is not a contraction");
  out.y = s.gammaX.fixed_point();
  if (s.gammaX(out.y) != out.y) throw CheckFailure("aperiodic_witness: fixed point residual is not zero");
  out.depth = depth;
  out.period_lower_bound = std::size_t{1} << std::min<std::size_t>(depth, 62);
  out.nested = true;
  Region level = s.X;
  for (std::size_t k = 0; k <= depth && out.nested; ++k) {
    if (classify_point(level, out.y) != Location::interior) out.nested = false;
    Region next = apply_map(s.gammaX, level);
    if (detail::relation_to(next, detail::Decomposed(level)) != detail::Relation::inside || !(area(next) < area(level)))
      out.nested = false;
    level = std::move(next);
  }
  Point q = out.y;
  for (std::size_t n = 1; n <= steps; ++n) {
    auto i = w.Tp.locate(q);
    if (!i) {
      out.boundary_hit = n;
      break;
    }
    q = w.Tp.piece(*i).map(q);
    if (q == out.y) throw CheckFailure("aperiodic_witness: y returns after " + std::to_string(n) + " steps");
    out.steps = n;
  }
  return out;
}

struct SpiralFigure {
  Region region;
  std::size_t tprime_period = 0;
  std::optional<std::size_t> induced_period;  // under T'_{Z'_4}, when the figure lies in Z'_4
};

// Y_0 = W_3, Y_1 = W_2, Y_2 = T'^-2(Gamma_1(W_4)), Y_{n+3} = Gamma_X(Y_n); each
// checked to be a periodic component by rerunning Algorithm 1 on its centroid.
inline std::vector<SpiralFigure> spiral(const WedgeSystem& w, const SimilaritySystem& s, const PiecewiseMap& f4,
                                        std::size_t count) {
  std::vector<Region> ys;
  ys.push_back(find_periodic_component(w, w.O[3]).region);
  ys.push_back(find_periodic_component(w, w.O[2]).region);
  Region g = apply_map(s.gamma1, find_periodic_component(w, w.O[4]).region);
  AffMap u1 = detail::unsplit_inverse_step(w, g);
  g = apply_map(u1, g);
  ys.push_back(apply_map(detail::unsplit_inverse_step(w, g), g));
  while (ys.size() < count) ys.push_back(apply_map(s.gammaX, ys[ys.size() - 3]));
  ys.resize(count);
  const detail::Decomposed z4(s.Z4);
  std::vector<SpiralFigure> out;
  for (auto& y : ys) {
    Point c = area_and_centroid(y).second;
    Component comp = find_periodic_component(w, c);
    if (!(comp.region == y)) throw CheckFailure("spiral: a figure is not a periodic component");
    SpiralFigure fig{std::move(y), comp.per_tprime, std::nullopt};
    if (detail::relation_to(fig.region, z4) == detail::Relation::inside)
      fig.induced_period = find_periodic_component(f4, c).per_tprime;
    out.push_back(std::move(fig));
  }
  return out;
}

// Level k of the renormalization: G_k = Gamma_1^k(Z'_4), the induced map F_k
// on it, and G_k split into F_k-tubes of G_{k+1} and F_k-periodic orbits.
struct RefinementStep {
  Region region;
  PiecewiseMap map;
  PartitionReport report;
};

inline std::vector<RefinementStep> refinement_chain(const WedgeSystem& w, std::size_t levels) {
  std::vector<RefinementStep> out;
  Region g = zprime4(w);
  PiecewiseMap f = return_map(first_return_map(w, g));
  for (std::size_t k = 0; k < levels; ++k) {
    Region next = apply_map(gamma1(w), g);
    PartitionReport rep = verify_partition(f, g, next);
    if (!rep.area_identity) throw CheckFailure("refinement_chain: area identity fails at level " + std::to_string(k));
    PiecewiseMap nf = return_map(rep.system);
    out.push_back({std::move(g), std::move(f), std::move(rep)});
    g = std::move(next);
    f = std::move(nf);
  }
  return out;
}

namespace detail {

inline QS3 overlap_area(const Region& r, const Decomposed& d) {
  auto rb = r.float_box();
  QS3 total;
  for (const auto& p : d.parts) {
    if (!boxes_overlap(rb, p.float_box())) continue;
    total += total_area(intersect_convex(r, p));
  }
  return total;
}

// Area of the periodic orbits of `rep` inside d.
inline QS3 red_inside(const PartitionReport& rep, const Decomposed& d) {
  QS3 total;
  for (const auto& p : rep.periodic)
    for (const auto& r : p.orbit) total += overlap_area(r, d);
  return total;
}

}  // namespace detail

// Z' refined level by level: level 0 is Z' itself, level L >= 1 paints the
// T'-tubes of G_{L-1} green and the periodic orbits that avoid G_{L-1} red.
struct RedFractionReport {
  std::vector<QS3> red_area;  // red area at levels 0, 1, ...
  std::vector<double> red_fraction;
  // Per level: the least fraction of a green region that is red two levels later.
  std::vector<QS3> min_green_fraction;
  QS3 zprime_area;
  bool nondecreasing = false;
  bool areas_add_up = false;  // red + green = area(Z') at every level >= 1
  std::optional<std::size_t> level_above_0_9;
};

inline RedFractionReport red_fraction_check(const WedgeSystem& w, const std::vector<RefinementStep>& chain) {
  RedFractionReport out;
  out.zprime_area = area(w.Zp);
  PartitionReport base = verify_partition(w, zprime4(w));
  out.red_area.push_back(QS3(0));
  out.red_area.push_back(base.periodic_tube_area);
  for (const auto& step : chain) {
    QS3 add;
    for (const auto& p : step.report.periodic) add += area(p.component.region) * QS3(static_cast<long>(p.component.weight));
    out.red_area.push_back(out.red_area.back() + add);
  }
  out.nondecreasing = true;
  for (std::size_t l = 0; l < out.red_area.size(); ++l) {
    if (l > 0 && out.red_area[l] < out.red_area[l - 1]) out.nondecreasing = false;
    QS3 r = out.red_area[l] / out.zprime_area;
    out.red_fraction.push_back(r.to_double());
    if (!out.level_above_0_9 && QS3(make_rat(9, 10)) < r) out.level_above_0_9 = l;
  }
  out.areas_add_up = true;
  for (std::size_t l = 0; l < chain.size(); ++l) {
    QS3 green;
    for (const auto& p : chain[l].map.pieces()) green += area(p.domain) * QS3(static_cast<long>(p.weight));
    if (!(green + out.red_area[l + 1] == out.zprime_area)) out.areas_add_up = false;
  }
  out.min_green_fraction.push_back(out.red_area.at(2) / out.zprime_area);
  // A green region at level L >= 1 is an isometric copy of a piece C of
  // F_{L-1}; two levels on, its red part is C's share of the F_{L-1}-periodic
  // orbits plus, for every F_{L-1}-tube image E of a cell D inside C, the
  // F_L-periodic area inside D.
  for (std::size_t l = 1; l < chain.size(); ++l) {
    const RefinementStep& up = chain[l - 1];
    const RefinementStep& down = chain[l];
    std::vector<QS3> red_of_cell;
    for (const auto& cell : up.report.system.cells)
      red_of_cell.push_back(detail::red_inside(down.report, detail::Decomposed(cell.source)));
    std::optional<QS3> best;
    for (const auto& piece : up.map.pieces()) {
      const detail::Decomposed c(piece.domain);
      QS3 red = detail::red_inside(up.report, c);
      for (std::size_t i = 0; i < up.report.tubes.size(); ++i)
        for (const auto& e : up.report.tubes[i])
          if (classify_point(piece.domain, interior_point(e)) == Location::interior) red += red_of_cell[i];
      QS3 frac = red / area(piece.domain);
      if (!best || frac < *best) best = frac;
    }
    out.min_green_fraction.push_back(*best);
  }
  return out;
}

}  // namespace dodeca
