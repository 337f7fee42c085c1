#pragma once

// Static SVG scenes. Coordinates become doubles only here, printed with nine
// decimals so identical scenes give identical bytes.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dodeca/errors.hpp"
#include "dodeca/geometry.hpp"

namespace dodeca {

struct Polyline {
  std::vector<Point> points;
};

using Geometry = std::variant<Region, Point, Polyline>;

struct Layer {
  std::string label;
  Geometry geometry;
  std::string style;  // CSS class
};

struct ViewBox {
  QS3 x0, y0, x1, y1;
  Region rect() const { return Region::polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}); }
};

struct Scene {
  std::vector<Layer> layers;
  std::optional<ViewBox> view;  // required for unbounded regions
};

namespace detail {

inline std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

// SVG's y axis points down.
inline std::string svg_xy(const Point& p) { return fmt9(p.x.to_double()) + " " + fmt9(-p.y.to_double()); }

inline std::string ring_path(const std::vector<Point>& v) {
  std::string d;
  for (std::size_t i = 0; i < v.size(); ++i) d += (i == 0 ? "M" : " L") + svg_xy(v[i]);
  return d + " Z";
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string render_svg(const Scene& s) {
  if (s.layers.empty()) throw DomainError("render_svg: empty scene");
  std::set<std::string> labels;
  for (const auto& l : s.layers)
    if (!labels.insert(l.label).second) throw DomainError("render_svg: duplicate label " + l.label);

  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool have = false;
  auto grow = [&](const Point& p) {
    double x = p.x.to_double(), y = -p.y.to_double();
    if (!have) {
      x0 = x1 = x;
      y0 = y1 = y;
      have = true;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  if (s.view) {
    grow({s.view->x0, s.view->y0});
    grow({s.view->x1, s.view->y1});
  }

  std::ostringstream body;
  for (const auto& l : s.layers) {
    std::string id = detail::xml_escape(l.label);
    std::string cls = detail::xml_escape(l.style);
    if (const auto* r = std::get_if<Region>(&l.geometry)) {
      std::vector<Region> shown{*r};
      if (!r->bounded()) {
        if (!s.view) throw DomainError("render_svg: unbounded region " + l.label + " needs a view box");
        shown = intersect_convex(*r, s.view->rect());
      }
      std::string d;
      for (const auto& part : shown) {
        if (!s.view) for (const auto& p : part.vertices()) grow(p);
        d += (d.empty() ? "" : " ") + detail::ring_path(part.vertices());
      }
      body << "<path id=\"" << id << "\" class=\"" << cls << "\" d=\"" << d << "\"/>\n";
    } else if (const auto* p = std::get_if<Point>(&l.geometry)) {
      if (!s.view) grow(*p);
      body << "<circle id=\"" << id << "\" class=\"" << cls << "\" cx=\"" << detail::fmt9(p->x.to_double())
           << "\" cy=\"" << detail::fmt9(-p->y.to_double()) << "\" r=\"0.010000000\"/>\n";
    } else {
      const auto& pl = std::get<Polyline>(l.geometry);
      std::string pts;
      for (const auto& q : pl.points) {
        if (!s.view) grow(q);
        pts += (pts.empty() ? "" : " ") + detail::fmt9(q.x.to_double()) + "," + detail::fmt9(-q.y.to_double());
      }
      body << "<polyline id=\"" << id << "\" class=\"" << cls << "\" points=\"" << pts << "\"/>\n";
    }
  }
  double pad = 0.02 * std::max(x1 - x0, y1 - y0);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << detail::fmt9(x0 - pad) << " "
      << detail::fmt9(y0 - pad) << " " << detail::fmt9(x1 - x0 + 2 * pad) << " " << detail::fmt9(y1 - y0 + 2 * pad)
      << "\">\n"
      << "<style>\n"
      << "path{stroke:#222;stroke-width:0.002;fill-rule:evenodd}\n"
      << ".table{fill:#ccc}.piece{fill:none}.component{fill:#8cf}.red{fill:#e55}.green{fill:#5c5}\n"
      << ".region{fill:#fe9}.spiral{fill:#c8f}.orbit{fill:none;stroke:#36c;stroke-width:0.002}\n"
      << ".point{fill:#000}\n"
      << "</style>\n"
      << body.str() << "</svg>\n";
  return out.str();
}

}  // namespace dodeca
