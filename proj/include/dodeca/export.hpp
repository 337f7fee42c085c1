#pragma once

// JSON encodings. Numbers are exact literals ("a+b*s3"), so everything
// round-trips bit for bit.

#include <json.hpp>

#include <string>
#include <vector>

#include "dodeca/dynamics.hpp"
#include "dodeca/errors.hpp"
#include "dodeca/geometry.hpp"
#include "dodeca/periods.hpp"
#include "dodeca/similarity.hpp"

namespace dodeca {

using Json = nlohmann::ordered_json;

inline Json to_json(const Point& p) { return Json::array({p.x.str(), p.y.str()}); }

inline Point point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw ParseError("point must be a pair of literals", 0);
  return {QS3::parse(j[0].get<std::string>()), QS3::parse(j[1].get<std::string>())};
}

inline Json to_json(const Region& r) {
  Json j;
  j["kind"] = r.bounded() ? "bounded" : "unbounded";
  Json v = Json::array();
  for (const auto& p : r.vertices()) v.push_back(to_json(p));
  j["vertices"] = std::move(v);
  if (!r.bounded()) {
    j["entry_ray"] = to_json(*r.entry_ray());
    j["exit_ray"] = to_json(*r.exit_ray());
  }
  return j;
}

inline Region region_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("vertices"))
    throw ParseError("region needs \"kind\" and \"vertices\"", 0);
  std::vector<Point> v;
  for (const auto& p : j.at("vertices")) v.push_back(point_from_json(p));
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "bounded") return Region::polygon(std::move(v));
  if (kind == "unbounded")
    return Region::unbounded(std::move(v), point_from_json(j.at("entry_ray")), point_from_json(j.at("exit_ray")));
  throw ParseError("unknown region kind: " + kind, 0);
}

inline Json to_json(const AffMap& f) {
  return Json::array({f.m00.str(), f.m01.str(), f.m10.str(), f.m11.str(), f.tx.str(), f.ty.str()});
}

inline Json to_json(const Component& c) {
  auto per = component_periods(c);
  Json j;
  j["region"] = to_json(c.region);
  j["center"] = to_json(c.center);
  j["area"] = area(c.region).str();
  j["per_tprime"] = c.per_tprime;
  j["rotation_l"] = c.rotation_l;
  j["code"] = symbols_str(c.code);
  j["per_t"] = per.t_component;
  j["per_t_other"] = per.t_other;
  j["per_tprime_other"] = per.tprime_other;
  j["centrally_symmetric"] = per.centrally_symmetric;
  return j;
}

inline Json to_json(const ReturnPiece& p) {
  Json j;
  j["source"] = to_json(p.source);
  j["target"] = to_json(p.target);
  j["map"] = to_json(p.map);
  j["time"] = p.time;
  j["area"] = area(p.source).str();
  j["convex"] = p.source.convex();
  return j;
}

inline Json to_json(const ReturnSystem& rs) {
  Json j;
  j["domain"] = to_json(rs.domain);
  j["events"] = rs.events;
  Json ps = Json::array();
  for (const auto& p : rs.pieces) ps.push_back(to_json(p));
  j["pieces"] = std::move(ps);
  return j;
}

inline Json to_json(const PartitionReport& r) {
  Json j;
  j["domain_area"] = r.domain_area.str();
  j["return_tube_area"] = r.return_tube_area.str();
  j["periodic_tube_area"] = r.periodic_tube_area.str();
  j["area_identity"] = r.area_identity;
  j["n"] = r.periodic.size();
  j["periods"] = r.periods();
  Json comps = Json::array();
  for (const auto& p : r.periodic) {
    Json c = to_json(p.component);
    c["tube_area"] = p.tube_area.str();
    comps.push_back(std::move(c));
  }
  j["periodic"] = std::move(comps);
  j["return_system"] = to_json(r.system);
  return j;
}

inline Json to_json(const AperiodicWitness& w) {
  Json j;
  j["y"] = to_json(w.y);
  j["certificate_steps"] = w.steps;
  j["boundary_hit"] = w.boundary_hit ? Json(*w.boundary_hit) : Json(nullptr);
  j["spiral_depth"] = w.depth;
  j["nested"] = w.nested;
  j["period_lower_bound"] = w.period_lower_bound;
  return j;
}

inline Json to_json(const PeriodSet& s, bool witnesses) {
  Json arr = Json::array();
  for (auto p : s.periods) arr.push_back(p);
  if (!witnesses) return arr;
  Json j;
  j["bound"] = s.bound;
  j["periods"] = std::move(arr);
  Json ws = Json::array();
  for (const auto& [p, w] : s.witnesses) {
    Json e;
    e["period"] = p;
    e["family"] = std::string(1, w.family);
    e["index"] = w.index;
    e["k"] = w.k;
    e["n"] = w.n;
    e["doubled"] = w.doubled;
    ws.push_back(std::move(e));
  }
  j["witnesses"] = std::move(ws);
  return j;
}

}  // namespace dodeca
