#pragma once

// Piecewise affine maps on a polygonal domain: the induced wedge map and every
// first-return map built from it share this representation.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dodeca/errors.hpp"
#include "dodeca/geometry.hpp"

namespace dodeca {

struct MapPiece {
  Region domain;  // open; convex unless the map is built without cut lines
  AffMap map;
  int symbol = 0;  // label reported in itineraries
  std::size_t weight = 1;  // steps of the underlying map T' taken by one application
};

class PiecewiseMap {
 public:
  PiecewiseMap() = default;
  // With `cuts`, the pieces are exactly the cells of the domain cut by those
  // lines, and splitting uses the lines directly.
  PiecewiseMap(Region domain, std::vector<MapPiece> pieces, std::vector<Line> cuts = {})
      : domain_(std::move(domain)), pieces_(std::move(pieces)), cuts_(std::move(cuts)) {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const auto& p = pieces_[i];
      Point q = interior_point(p.domain);
      std::vector<int> sig;
      for (const auto& l : cuts_) sig.push_back(l.side(q));
      signatures_.push_back(std::move(sig));
      boxes_.push_back(p.domain.float_box());
      parts_.push_back(p.domain.convex() ? std::vector<Region>{p.domain} : convex_decomposition(p.domain));
      if (cuts_.empty())
        for (const auto& c : parts_.back()) convex_parts_.push_back({c, i});
    }
  }

  const Region& domain() const { return domain_; }
  const std::vector<MapPiece>& pieces() const { return pieces_; }
  const MapPiece& piece(std::size_t i) const { return pieces_.at(i); }
  std::size_t size() const { return pieces_.size(); }
  const std::vector<Line>& cuts() const { return cuts_; }
  // Convex pieces covering piece i (just the piece when it is convex).
  const std::vector<Region>& convex_parts(std::size_t i) const { return parts_.at(i); }

  // Index of the piece whose interior holds p; nullopt if p is on a piece
  // boundary or outside the domain.
  std::optional<std::size_t> locate(const Point& p) const {
    if (!cuts_.empty()) {
      std::vector<int> sig;
      for (const auto& l : cuts_) {
        int s = l.side(p);
        if (s == 0) return std::nullopt;
        sig.push_back(s);
      }
      for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (signatures_[i] == sig) {
          if (classify_point(pieces_[i].domain, p) == Location::interior) return i;
          return std::nullopt;
        }
      }
      return std::nullopt;
    }
    double x = p.x.to_double();
    double y = p.y.to_double();
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const auto& b = boxes_[i];
      if (pieces_[i].domain.bounded() &&
          (x < b.x0 - 1e-9 || x > b.x1 + 1e-9 || y < b.y0 - 1e-9 || y > b.y1 + 1e-9))
        continue;
      Location loc = classify_point(pieces_[i].domain, p);
      if (loc == Location::interior) return i;
      if (loc == Location::boundary) return std::nullopt;
    }
    return std::nullopt;
  }

  // Splits r (a subset of the domain) into parts, each inside a single piece.
  std::vector<std::pair<Region, std::size_t>> partition(const Region& r) const {
    std::vector<std::pair<Region, std::size_t>> out;
    if (!cuts_.empty()) {
      std::vector<std::pair<Region, std::vector<int>>> cur;
      cur.push_back({r, {}});
      for (const auto& l : cuts_) {
        std::vector<std::pair<Region, std::vector<int>>> next;
        for (auto& [reg, sig] : cur) {
          int s = region_side(reg, l);
          if (s != 0) {
            sig.push_back(s);
            next.push_back({std::move(reg), std::move(sig)});
            continue;
          }
          auto pos = detail::positive_parts(reg, l.normal(), l.c);
          auto neg = detail::positive_parts(reg, -l.normal(), -l.c);
          for (auto& p : pos) {
            auto s2 = sig;
            s2.push_back(1);
            next.push_back({std::move(p), std::move(s2)});
          }
          for (auto& p : neg) {
            auto s2 = sig;
            s2.push_back(-1);
            next.push_back({std::move(p), std::move(s2)});
          }
        }
        cur = std::move(next);
      }
      for (auto& [reg, sig] : cur) {
        bool found = false;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
          if (signatures_[i] == sig) {
            out.push_back({std::move(reg), i});
            found = true;
            break;
          }
        }
        if (!found) throw DomainError("partition: region leaves the map's domain");
      }
      return out;
    }
    auto rb = r.float_box();
    for (const auto& [cell, i] : convex_parts_) {
      if (r.bounded() && cell.bounded()) {
        auto b = cell.float_box();
        if (rb.x1 < b.x0 - 1e-9 || rb.x0 > b.x1 + 1e-9 || rb.y1 < b.y0 - 1e-9 || rb.y0 > b.y1 + 1e-9) continue;
      }
      for (auto& part : intersect_convex(r, cell)) out.push_back({std::move(part), i});
    }
    return out;
  }

  // The map on the image pieces, with inverse affine maps.
  PiecewiseMap inverse() const {
    std::vector<MapPiece> inv;
    for (const auto& p : pieces_)
      inv.push_back({apply_map(p.map, p.domain), p.map.inverse(), p.symbol, p.weight});
    return PiecewiseMap(domain_, std::move(inv));
  }

 private:
  Region domain_;
  std::vector<MapPiece> pieces_;
  std::vector<Line> cuts_;
  std::vector<std::vector<int>> signatures_;
  std::vector<Region::Box> boxes_;
  std::vector<std::vector<Region>> parts_;
  std::vector<std::pair<Region, std::size_t>> convex_parts_;
};

}  // namespace dodeca
