#pragma once

// The set of all periods of the outer billiard: vectors h built from fixed
// integer matrices, each giving the period 12 sum(h) / gcd(12, sum(i h_i)),
// closed under doubling of odd values.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dodeca/dynamics.hpp"
#include "dodeca/errors.hpp"

namespace dodeca {

using IntVec = std::vector<mpz_class>;
using IntMat = std::vector<std::vector<long>>;

struct PeriodMatrices {
  IntMat M68;  // 6 x 8
  IntMat M66;
  IntMat M88;
  std::vector<std::vector<long>> F;  // 8-vectors
  std::vector<std::vector<long>> G;  // 6-vectors
};

inline const PeriodMatrices& period_matrices() {
  static const PeriodMatrices m{
      {{1, 0, 0, 0, 0, 0, 0, 0},
       {0, 1, 0, 0, 0, 0, 0, 0},
       {0, 0, 1, 0, 0, 0, 0, 0},
       {0, 0, 0, 1, 8, 18, 13, 24},
       {0, 0, 0, 0, 2, 7, 14, 29},
       {0, 0, 0, 0, 0, 0, 0, 0}},
      {{0, 0, 0, 0, 0, 0},
       {0, 0, 0, 0, 0, 0},
       {0, 0, 0, 0, 0, 0},
       {0, 0, 0, 0, 0, 0},
       {5, 4, 3, 2, 1, 0},
       {1, 1, 1, 1, 1, 1}},
      {{2, 2, 2, 2, 20, 50, 26, 50},
       {2, 2, 2, 2, 20, 50, 26, 50},
       {4, 4, 4, 4, 42, 107, 74, 145},
       {2, 2, 2, 2, 20, 50, 48, 94},
       {0, 1, 0, 0, 0, 0, 0, 0},
       {1, 0, 0, 0, 0, 0, 0, 0},
       {0, 0, 0, 1, 8, 18, 13, 24},
       {0, 0, 1, 0, 0, 0, 0, 0}},
      {{0, 1, 0, 0, 0, 0, 0, 0},
       {0, 0, 1, 0, 0, 0, 0, 0},
       {9, 2, 5, 2, 0, 0, 0, 0},
       {6, 4, 10, 4, 0, 0, 0, 0},
       {0, 0, 2, 3, 0, 0, 1, 0},
       {24, 24, 120, 102, 0, 0, 18, 0},
       {48, 48, 156, 108, 0, 0, 24, 0},
       {4, 4, 9, 4, 0, 0, 1, 0},
       {1, 0, 0, 0, 0, 0, 0, 0},
       {0, 0, 1, 1, 0, 0, 0, 0},
       {2, 2, 4, 2, 0, 0, 1, 0},
       {0, 0, 7, 8, 0, 0, 1, 0},
       {6, 6, 13, 6, 0, 0, 2, 0}},
      {{0, 0, 0, 0, 1, 0},
       {0, 0, 0, 1, 0, 0},
       {0, 0, 0, 24, 36, 0},
       {0, 0, 0, 18, 36, 0},
       {0, 0, 0, 1, 2, 0},
       {0, 0, 0, 1, 1, 0},
       {0, 0, 0, 2, 1, 0},
       {0, 0, 0, 1, 3, 0}},
  };
  return m;
}

// FNV-1a over the decimal entries, each followed by a comma, in the order
// M68, M66, M88 (row-major), F, G.
inline std::uint64_t period_matrices_checksum(const PeriodMatrices& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](long v) {
    for (char c : std::to_string(v) + ",") {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto* block : {&m.M68, &m.M66, &m.M88, &m.F, &m.G})
    for (const auto& row : *block)
      for (long v : row) feed(v);
  return h;
}

inline IntVec to_vec(const std::vector<long>& v) { return IntVec(v.begin(), v.end()); }

inline IntVec mul(const IntMat& m, const IntVec& x) {
  IntVec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != x.size()) throw DomainError("mul: dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m[i][j] * x[j];
  }
  return out;
}

inline mpz_class entry_sum(const IntVec& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += x;
  return s;
}

// 12 sum(h) / gcd(12, sum(i h_i)) with weights 1..6.
inline mpz_class period_of_h(const IntVec& h) {
  if (h.size() != 6) throw DomainError("period_of_h: h must have 6 entries");
  mpz_class s = 0, ws = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    if (h[i] < 0) throw DomainError("period_of_h: negative entry");
    s += h[i];
    ws += h[i] * static_cast<long>(i + 1);
  }
  if (s == 0) throw DomainError("period_of_h: zero vector");
  mpz_class g;
  mpz_class twelve = 12;
  mpz_gcd(g.get_mpz_t(), twelve.get_mpz_t(), ws.get_mpz_t());
  return 12 * s / g;
}

struct PeriodWitness {
  char family = 'F';  // 'F' or 'G'
  std::size_t index = 0;
  std::size_t k = 0;
  std::size_t n = 0;  // unused for G
  bool doubled = false;  // period is twice an odd element of B

  auto key() const { return std::tuple(doubled, family, index, k, n); }
  bool operator<(const PeriodWitness& o) const { return key() < o.key(); }
  bool operator==(const PeriodWitness& o) const { return key() == o.key(); }
};

// h for a witness, by replaying the matrix product.
inline IntVec replay(const PeriodWitness& w, const PeriodMatrices& m = period_matrices()) {
  IntVec h;
  if (w.family == 'F') {
    IntVec x = to_vec(m.F.at(w.index));
    for (std::size_t i = 0; i < w.n; ++i) x = mul(m.M88, x);
    h = mul(m.M68, x);
  } else {
    h = to_vec(m.G.at(w.index));
  }
  for (std::size_t i = 0; i < w.k; ++i) h = mul(m.M66, h);
  return h;
}

namespace detail {

// c^T M >= c^T entrywise, so x -> c.x never decreases under M.
inline bool functional_grows(const IntMat& m, const std::vector<long>& c) {
  for (std::size_t j = 0; j < c.size(); ++j) {
    long col = 0;
    for (std::size_t i = 0; i < m.size(); ++i) col += c[i] * m[i][j];
    if (col < c[j]) return false;
  }
  return true;
}

}  // namespace detail

struct HEntry {
  IntVec h;
  mpz_class period;
  PeriodWitness witness;
};

// Every h in H with period <= bound. A period is at least sum(h), and sum(h)
// never decreases along M66 or (after M68) along M88, so each chain stops as
// soon as the sum exceeds the bound or the vector repeats.
inline std::vector<HEntry> enumerate_H(unsigned long bound, const PeriodMatrices& m = period_matrices()) {
  const std::vector<long> ones6(6, 1);
  std::vector<long> c8(8, 0);  // sum(M68 x) = c8 . x
  for (const auto& row : m.M68)
    for (std::size_t j = 0; j < 8; ++j) c8[j] += row[j];
  if (!detail::functional_grows(m.M66, ones6) || !detail::functional_grows(m.M88, c8))
    throw CheckFailure("enumerate_H: pruning premise fails for these matrices");
  std::vector<HEntry> out;
  auto walk_k = [&](IntVec h, PeriodWitness w) {
    for (std::size_t k = 0;; ++k) {
      if (entry_sum(h) > bound) return;
      w.k = k;
      mpz_class p = period_of_h(h);
      if (p <= bound) out.push_back({h, p, w});
      IntVec next = mul(m.M66, h);
      if (next == h) return;
      h = std::move(next);
    }
  };
  for (std::size_t i = 0; i < m.F.size(); ++i) {
    IntVec x = to_vec(m.F[i]);
    for (std::size_t n = 0;; ++n) {
      IntVec h = mul(m.M68, x);
      if (entry_sum(h) > bound) break;
      walk_k(h, {'F', i, 0, n, false});
      IntVec next = mul(m.M88, x);
      if (next == x) break;
      x = std::move(next);
    }
  }
  for (std::size_t i = 0; i < m.G.size(); ++i) walk_k(to_vec(m.G[i]), {'G', i, 0, 0, false});
  return out;
}

struct PeriodSet {
  unsigned long bound = 0;
  std::set<unsigned long> periods;
  std::map<unsigned long, PeriodWitness> witnesses;  // least generator per period
  bool contains(unsigned long p) const { return periods.count(p) > 0; }
};

inline PeriodSet full_period_set(unsigned long bound) {
  PeriodSet out;
  out.bound = bound;
  auto add = [&](unsigned long p, const PeriodWitness& w) {
    out.periods.insert(p);
    auto it = out.witnesses.find(p);
    if (it == out.witnesses.end() || w < it->second) out.witnesses[p] = w;
  };
  for (const auto& e : enumerate_H(bound)) {
    unsigned long p = e.period.get_ui();
    add(p, e.witness);
    if (p % 2 == 1 && 2 * p <= bound) {
      PeriodWitness d = e.witness;
      d.doubled = true;
      add(2 * p, d);
    }
  }
  return out;
}

struct CrossValidation {
  std::size_t components = 0;  // component periods checked
  std::size_t samples = 0;
  std::size_t sample_periodic = 0;  // samples whose orbit closed within the cap
  std::size_t sample_open = 0;  // no return within the cap
  std::size_t sample_boundary = 0;
  std::size_t oracle_checked = 0;  // sample periods confirmed by iterating T itself
  std::set<unsigned long> seen;
  std::vector<unsigned long> violations;  // periods <= bound outside the set
  std::vector<unsigned long> unwitnessed;  // enumerated, never seen
  bool ok() const { return violations.empty(); }
};

// Periods of components (centre and other points) and of random points of Z'
// must all lie in the enumerated set. A sample's T'-period n and symbol sum s
// give its T-period n * 12 / gcd(s, 12); the first `oracle` of them are also
// recomputed by iterating T directly.
inline CrossValidation cross_validate(const WedgeSystem& w, const PeriodSet& set,
                                      const std::vector<Component>& components, std::size_t samples,
                                      std::uint64_t seed = 1, std::size_t cap = 100000, std::size_t oracle = 50) {
  CrossValidation out;
  auto check = [&](std::size_t p) {
    if (p > set.bound) return;
    out.seen.insert(p);
    if (!set.contains(p)) out.violations.push_back(p);
  };
  for (const auto& c : components) {
    auto per = component_periods(c);
    check(per.t_component);
    check(per.t_other);
    ++out.components;
  }
  for (const auto& p : sample_interior_points(w.Zp, samples, seed)) {
    ++out.samples;
    Point q = p;
    long long sum = 0;
    std::size_t n = 0;
    bool boundary = false;
    for (std::size_t k = 1; k <= cap; ++k) {
      auto i = w.Tp.locate(q);
      if (!i) {
        boundary = true;
        break;
      }
      q = w.Tp.piece(*i).map(q);
      sum += w.Tp.piece(*i).symbol;
      if (q == p) {
        n = k;
        break;
      }
    }
    if (boundary) {
      ++out.sample_boundary;
      continue;
    }
    if (n == 0) {
      ++out.sample_open;
      continue;
    }
    ++out.sample_periodic;
    std::size_t tp = t_period_from(n, sum);
    if (out.oracle_checked < oracle && tp <= 5000) {
      if (t_period(w.table, p, tp) != tp) throw CheckFailure("cross_validate: T-period disagrees with the T'-orbit");
      ++out.oracle_checked;
    }
    check(tp);
  }
  for (auto p : set.periods)
    if (!out.seen.count(p)) out.unwitnessed.push_back(p);
  return out;
}

}  // namespace dodeca
