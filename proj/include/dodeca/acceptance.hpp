#pragma once

// The ten acceptance checks, shared by `dodeca verify` and the acceptance
// test binary. Every comparison is exact; there are no tolerances.

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dodeca/billiard.hpp"
#include "dodeca/dynamics.hpp"
#include "dodeca/errors.hpp"
#include "dodeca/periods.hpp"
#include "dodeca/shape.hpp"
#include "dodeca/similarity.hpp"

namespace dodeca {

enum class Outcome { pass, fail, inconclusive };

struct CheckResult {
  int id = 0;
  std::string name;
  Outcome outcome = Outcome::fail;
  std::string detail;
  double seconds = 0;
};

inline const char* outcome_str(Outcome o) {
  switch (o) {
    case Outcome::pass: return "PASS";
    case Outcome::fail: return "FAIL";
    case Outcome::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

// Golden values frozen after the first verified run.
namespace golden {
inline const std::multiset<std::size_t> kZ14Periods{1, 1, 18, 24, 1, 60, 54, 3, 32, 2,
                                                    756, 1008, 48, 1, 2, 3, 4, 37, 42, 85};
inline const char* const kMinGreenFraction = "-892085+515046*s3";
inline constexpr std::size_t kRedAbove09Level = 2;
inline constexpr std::size_t kPeriodCount2000 = 1000;
}  // namespace golden

namespace detail {

// Collects failed conditions; the check passes when none failed.
class Conditions {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failed_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    if (failed_.empty()) {
      os << total_ << " conditions hold";
    } else {
      os << failed_.size() << "/" << total_ << " failed: ";
      for (std::size_t i = 0; i < failed_.size() && i < 5; ++i) os << (i ? "; " : "") << failed_[i];
    }
    for (const auto& n : notes_) os << "; " << n;
    return os.str();
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failed_;
  std::vector<std::string> notes_;
};

// T applied to a whole region that lies in one closed sector.
inline Region billiard_image(const Table& t, const Region& r) {
  Point c = interior_point(r);
  for (int i = 0; i < 12; ++i) {
    if (classify_point(t.V[i], c) != Location::interior) continue;
    for (const auto& v : r.vertices())
      if (classify_point(t.V[i], v) == Location::exterior) throw CheckFailure("billiard_image: region spans sectors");
    return apply_map(AffMap::point_reflection(t.A[i]), r);
  }
  throw CheckFailure("billiard_image: interior point on a sector boundary");
}

inline std::string periods_str(const std::multiset<std::size_t>& s) {
  std::string out;
  for (auto p : s) out += (out.empty() ? "" : ",") + std::to_string(p);
  return out;
}

}  // namespace detail

// Shared, lazily computed data for the checks.
class Acceptance {
 public:
  explicit Acceptance(const WedgeSystem& w = standard_system(), std::uint64_t seed = 1) : w_(w), seed_(seed) {}

  std::vector<CheckResult> run_all(const std::function<void(const CheckResult&)>& on_result = {}) {
    std::vector<CheckResult> out;
    for (int id = 1; id <= 10; ++id) {
      out.push_back(run(id));
      if (on_result) on_result(out.back());
    }
    return out;
  }

  static std::string name(int id) {
    static const char* const names[] = {"",
                                        "construction-identities",
                                        "fixed-points",
                                        "base-components",
                                        "first-return-structure",
                                        "partition-lemma",
                                        "self-similarity",
                                        "aperiodic-witness",
                                        "full-measure",
                                        "period-set",
                                        "kernel-properties"};
    return names[id];
  }

  CheckResult run(int id) {
    CheckResult r;
    r.id = id;
    r.name = name(id);
    auto t0 = std::chrono::steady_clock::now();
    try {
      detail::Conditions c;
      switch (id) {
        case 1: construction(c); break;
        case 2: fixed_points(c); break;
        case 3: base_components(c); break;
        case 4: first_return(c); break;
        case 5: partition(c); break;
        case 6: self_similarity(c); break;
        case 7: aperiodic(c); break;
        case 8: full_measure(c); break;
        case 9: period_set(c); break;
        case 10: kernel(c); break;
        default: throw DomainError("unknown check id");
      }
      r.outcome = c.ok() ? Outcome::pass : Outcome::fail;
      r.detail = c.summary();
    } catch (const InconclusiveError& e) {
      r.outcome = Outcome::inconclusive;
      r.detail = e.what();
    } catch (const std::exception& e) {
      r.outcome = Outcome::fail;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

 private:
  const WedgeSystem& w_;
  std::uint64_t seed_;
  std::optional<SimilaritySystem> sim_;
  std::optional<PartitionReport> z4_, z14_;
  std::optional<ReturnSystem> rs4_;

  const SimilaritySystem& sim() {
    if (!sim_) sim_ = build_similarity(w_);
    return *sim_;
  }
  const ReturnSystem& rs4() {
    if (!rs4_) rs4_ = first_return_map(w_, sim().Z4);
    return *rs4_;
  }
  const PartitionReport& z4() {
    if (!z4_) z4_ = verify_partition(w_, sim().Z4);
    return *z4_;
  }
  const PartitionReport& z14() {
    if (!z14_) z14_ = verify_partition(w_, sim().Z14);
    return *z14_;
  }
  Component base(int i) { return find_periodic_component(w_, w_.O[i]); }

  void construction(detail::Conditions& c) {
    const Table& t = w_.table;
    c.expect(w_.P[1] == t.A[1], "P1 = A1");
    c.expect(w_.Q[2] == t.A[2], "Q2 = A2");
    c.expect(w_.Q[5] == t.C[3], "Q5 = C3");
    c.expect(w_.P[5] == t.mirrored(3, 6), "P5 = A^3_6");
    c.expect(w_.Q[6] == t.mirrored(3, 1), "Q6 = A^3_1");
    c.expect(w_.Q[6] == t.mirrored_relative(4, 6), "A^3_1 = A^4_6 (relative labels)");
    for (int i = 0; i < 12; ++i)
      c.expect(t.mirrored_relative(i, 1) == t.mirrored_relative(i + 1, 6), "A^i_1 = A^{i+1}_6, i=" + std::to_string(i));
    for (int i = 0; i < 12; ++i)
      c.expect(detail::billiard_image(t, t.gamma[i]) == t.gamma[mod12(i + 5)], "T(gamma^i), i=" + std::to_string(i));
  }

  void fixed_points(detail::Conditions& c) {
    for (int i = 1; i <= 5; ++i) c.expect(induced_step(w_, w_.O[i]).point == w_.O[i], "T'(O_i) = O_i");
    // Exact: each piece map has at most one fixed point; it counts if it lies in the closed piece.
    std::set<std::pair<std::string, std::string>> found;
    for (std::size_t i = 0; i < w_.Tp.size(); ++i) {
      const AffMap& f = w_.Tp.piece(i).map;
      AffMap sys{1 - f.m00, -f.m01, -f.m10, 1 - f.m11, 0, 0};
      if (sys.det().is_zero()) {
        c.expect(!f.tx.is_zero() || !f.ty.is_zero(), "no piece map is the identity");
        continue;
      }
      Point p = f.fixed_point();
      if (classify_point(w_.Tp.piece(i).domain, p) != Location::exterior) found.insert({p.x.str(), p.y.str()});
    }
    std::set<std::pair<std::string, std::string>> expected;
    for (int k = 1; k <= 5; ++k) expected.insert({w_.O[k].x.str(), w_.O[k].y.str()});
    c.expect(found == expected, "piece fixed points are exactly O1..O5");
    // Samples from the parallelogram A1 + s (A2 - A1) + t (A1 - A0), 0 < s, t < 8.
    const auto& A = w_.table.A;
    Vec e1 = QS3(8) * (A[2] - A[1]), e2 = QS3(8) * (A[1] - A[0]);
    Region box = Region::polygon({A[1], A[1] + e1, A[1] + e1 + e2, A[1] + e2});
    std::size_t fixed = 0, defined = 0;
    for (const auto& p : sample_interior_points(box, 10000, seed_)) {
      auto i = w_.Tp.locate(p);
      if (!i) continue;
      ++defined;
      if (w_.Tp.piece(*i).map(p) == p) {
        bool known = false;
        for (int k = 1; k <= 5; ++k) known = known || p == w_.O[k];
        if (!known) ++fixed;
      }
    }
    c.expect(defined == 10000, "all samples are off the cut lines");
    c.expect(fixed == 0, "no other fixed point among samples");
    c.note(std::to_string(defined) + " samples");
  }

  void base_components(detail::Conditions& c) {
    const QS3 cos150(Rat(0), make_rat(-1, 2));
    const QS3 cos120(make_rat(-1, 2));
    auto all = [&](const Region& r, const QS3& v) {
      for (std::size_t i = 0; i < r.vertices().size(); ++i)
        if (!angle_cos_is(r, i, v)) return false;
      return true;
    };
    Region w1 = base(1).region, w2 = base(2).region, w3 = base(3).region, w4 = base(4).region;
    c.expect(w1.vertices().size() == 12 && equilateral(w1) && all(w1, cos150), "W1 regular 12-gon");
    c.expect(inscribed(w1, w_.piece(1)), "W1 inscribed in P1P2Q2");
    std::size_t ip = vertex_index(w2, w_.P[3]), iq = vertex_index(w2, w_.Q[2]);
    bool w2ok = w2.vertices().size() == 6 && equilateral(w2) && ip < 6 && iq < 6 && (ip + 3) % 6 == iq;
    for (std::size_t i = 0; w2ok && i < 6; ++i) w2ok = angle_cos_is(w2, i, i % 2 == ip % 2 ? QS3(0) : cos150);
    c.expect(w2ok, "W2 equilateral hexagon, right angles at P3 and opposite Q2");
    std::size_t i3 = vertex_index(w3, w_.Q[3]);
    bool w3ok = w3.vertices().size() == 8 && equilateral(w3) && i3 < 8;
    for (std::size_t i = 0; w3ok && i < 8; ++i) w3ok = angle_cos_is(w3, i, i % 2 == i3 % 2 ? cos120 : cos150);
    c.expect(w3ok, "W3 equilateral octagon, 2pi/3 vertex at Q3");
    c.expect(w4.vertices().size() == 12 && equilateral(w4) && all(w4, cos150), "W4 regular 12-gon");
    c.expect(inscribed(w4, w_.piece(4)), "W4 inscribed in P5P4Q4Q5");
  }

  static std::size_t count_sides(const ReturnSystem& rs, std::size_t n) {
    std::size_t k = 0;
    for (const auto& p : rs.pieces) k += p.source.vertices().size() == n;
    return k;
  }
  static std::size_t count_nonconvex(const ReturnSystem& rs) {
    std::size_t k = 0;
    for (const auto& p : rs.pieces) k += !p.source.convex();
    return k;
  }

  void first_return(detail::Conditions& c) {
    auto z1 = first_return_map(w_, sim().Z1);
    bool hex_unequal = false;
    for (const auto& p : z1.pieces)
      if (p.source.vertices().size() == 6) hex_unequal = !equilateral(p.source);
    c.expect(z1.pieces.size() == 10 && count_sides(z1, 3) == 4 && count_sides(z1, 4) == 5 && count_sides(z1, 6) == 1,
             "Z'1: 4 triangles, 5 quadrilaterals, 1 hexagon");
    c.expect(hex_unequal, "Z'1 hexagon has unequal sides");
    auto z14 = first_return_map(w_, sim().Z14);
    for (const ReturnSystem* rs : std::vector<const ReturnSystem*>{&rs4(), &z14}) {
      c.expect(rs->pieces.size() == 8 && count_sides(*rs, 3) == 2 && count_sides(*rs, 4) == 6,
               "8 pieces: 2 triangles, 6 quadrilaterals");
      c.expect(count_nonconvex(*rs) == 1, "exactly one nonconvex piece");
    }
    c.expect(verify_conjugacy(rs4(), z14, sim().gamma1, 0).pieces_match, "Gamma1 maps the Z'4 pieces onto Z'14");
  }

  void partition(detail::Conditions& c) {
    c.expect(z4().periodic.size() == 7, "n = 7 for Z'4");
    c.expect(z4().area_identity, "area identity for Z'4");
    c.expect(z14().periodic.size() == 20, "n = 20 for Z'14");
    c.expect(z14().area_identity, "area identity for Z'14");
    std::multiset<std::size_t> got;
    for (auto p : z14().periods()) got.insert(p);
    c.expect(got == golden::kZ14Periods, "Z'14 periods {" + detail::periods_str(got) + "}");
  }

  void self_similarity(detail::Conditions& c) {
    Component g = find_periodic_component(w_, sim().gamma1(w_.O[4]));
    c.expect(g.per_tprime == 37, "Gamma1(W4) has T'-period 37");
    c.expect(g.region == apply_map(sim().gamma1, base(4).region), "component is Gamma1(W4)");
    auto r14 = verify_conjugacy(rs4(), first_return_map(w_, sim().Z14), sim().gamma1, 1000, seed_);
    auto rx = verify_conjugacy(rs4(), first_return_map(w_, sim().X), sim().gammaX, 1000, seed_ + 1);
    c.expect(r14.pieces_match && rx.pieces_match, "piece-level conjugacy (Gamma1 and Gamma_X)");
    c.expect(r14.ok() && rx.ok(), "sampled commuting squares");
  }

  void aperiodic(detail::Conditions& c) {
    auto wit = aperiodic_witness(w_, sim(), 10000, 8);
    c.expect(sim().gammaX(wit.y) == wit.y, "Gamma_X(y) = y");
    c.expect(wit.nested, "y in int(Gamma_X^k(X)) with strict nesting, k <= 8");
    c.expect(!wit.boundary_hit && wit.steps == 10000, "T'^n(y) != y for n <= 10^4");
    c.note("y = (" + wit.y.str() + ")");
  }

  void full_measure(detail::Conditions& c) {
    auto chain = refinement_chain(w_, 3);
    auto rep = red_fraction_check(w_, chain);
    bool positive = true;
    for (const auto& f : rep.min_green_fraction) positive = positive && f > QS3(0);
    c.expect(positive, "minimum red fraction > 0 at every level");
    c.expect(rep.min_green_fraction.size() == 3 && rep.min_green_fraction[1] == rep.min_green_fraction[2],
             "fractions equal across self-similar levels");
    c.expect(rep.min_green_fraction.at(1) == QS3::parse(golden::kMinGreenFraction), "golden minimum fraction");
    c.expect(rep.nondecreasing, "red fraction nondecreasing");
    c.expect(rep.areas_add_up, "red + green = area(Z') per level");
    c.expect(rep.level_above_0_9 && *rep.level_above_0_9 <= golden::kRedAbove09Level, "red fraction > 0.9 by level 2");
    c.expect(rep.red_area.at(2) == z14().periodic_tube_area, "induced red area matches the direct Z'14 partition");
    std::ostringstream os;
    os << "eps = " << rep.min_green_fraction.at(1).to_double() << ", red fractions";
    for (double f : rep.red_fraction) os << " " << f;
    c.note(os.str());
  }

  void period_set(detail::Conditions& c) {
    auto s = full_period_set(2000);
    auto again = full_period_set(2000);
    c.expect(s.periods == again.periods, "deterministic");
    c.expect(s.periods.size() == golden::kPeriodCount2000, "golden size");
    bool doubling = true;
    for (auto p : s.periods) doubling = doubling && (p % 2 == 0 || 2 * p > 2000 || s.contains(2 * p));
    c.expect(doubling, "odd b implies 2b");
    std::vector<Component> comps;
    for (int i = 1; i <= 5; ++i) comps.push_back(base(i));
    comps.push_back(find_periodic_component(w_, sim().gamma1(w_.O[4])));
    for (const PartitionReport* rep : std::vector<const PartitionReport*>{&z4(), &z14()})
      for (const auto& p : rep->periodic) comps.push_back(p.component);
    auto cv = cross_validate(w_, s, comps, 1000, seed_);
    c.expect(cv.ok(), "every simulated period is enumerated");
    c.note(std::to_string(cv.components) + " components, " + std::to_string(cv.sample_periodic) + "/" +
           std::to_string(cv.samples) + " periodic samples, " + std::to_string(cv.seen.size()) + " distinct periods");
  }

  void kernel(detail::Conditions& c) {
    std::mt19937_64 rng(seed_);
    std::uniform_int_distribution<long> u(-50, 50), d(1, 30);
    auto rq = [&] { return QS3(make_rat(u(rng), d(rng)), make_rat(u(rng), d(rng))); };
    std::size_t bad_field = 0, bad_sign = 0;
    for (int i = 0; i < 1000; ++i) {
      QS3 x = rq(), y = rq(), z = rq();
      bool ok = (x + y) + z == x + (y + z) && (x * y) * z == x * (y * z) && x * y == y * x &&
                x * (y + z) == x * y + x * z && (x.is_zero() || x * x.inverse() == QS3(1));
      bad_field += !ok;
      // sign(a + b sqrt3) against the conjugate identity and the double.
      double dv = x.to_double();
      bool sok = x.sign() * y.sign() == (x * y).sign() && (std::abs(dv) < 1e-9 || x.sign() == (dv > 0 ? 1 : -1));
      bad_sign += !sok;
    }
    c.expect(bad_field == 0, "field axioms (1000)");
    c.expect(bad_sign == 0, "sign correctness (1000)");

    std::size_t bad_split = 0, bad_iso = 0, splits = 0;
    const Region& box = w_.Zp;  // nonconvex, so splits can produce several pieces
    while (splits < 1000) {
      QS3 a(make_rat(u(rng), d(rng)), make_rat(u(rng), d(rng)));
      QS3 b(make_rat(u(rng), d(rng)), make_rat(u(rng), d(rng)));
      if (a.is_zero() && b.is_zero()) continue;
      Line l = Line::make(a, b, QS3(make_rat(u(rng), 10)));
      bad_split += total_area(split_region(box, l)) != area(box);
      AffMap f = AffMap::translation({rq(), rq()}).after(AffMap::rotation(static_cast<int>(d(rng))));
      bad_iso += area(apply_map(f, box)) != area(box);
      ++splits;
    }
    c.expect(bad_split == 0, "split-area conservation (1000)");
    c.expect(bad_iso == 0, "isometry area preservation (1000)");

    std::size_t shift = 0, conj = 0, bad_shift = 0, bad_conj = 0;
    for (const auto& p : sample_interior_points(w_.piece(2), 3000, seed_ + 7)) {
      if (shift >= 1000 && conj >= 1000) break;
      auto it = compute_itinerary(w_, p, 6);
      if (it.stopped) continue;
      Point q = induced_step(w_, p).point;
      auto jt = compute_itinerary(w_, q, 5);
      if (jt.stopped) continue;
      bad_shift += std::vector<int>(it.symbols.begin() + 1, it.symbols.end()) != jt.symbols;
      ++shift;
      bad_conj += T6(w_, w_.H(p)) != w_.H(q);
      ++conj;
    }
    c.expect(shift >= 1000 && bad_shift == 0, "itinerary shift (" + std::to_string(shift) + ")");
    c.expect(conj >= 1000 && bad_conj == 0, "H T' = T6 H (" + std::to_string(conj) + ")");
  }
};

}  // namespace dodeca
