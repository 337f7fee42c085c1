#include <gtest/gtest.h>

#include <string>

#include "dodeca/export.hpp"
#include "dodeca/render.hpp"

using namespace dodeca;

namespace {

Point pt(long x, long y) { return {QS3(x), QS3(y)}; }

Region dodecagon() {
  std::vector<Point> v;
  for (int k = 0; k < 12; ++k) v.push_back(AffMap::rotation(k)(pt(2, 0)));
  return Region::polygon(v);
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto i = s.find(what); i != std::string::npos; i = s.find(what, i + 1)) ++n;
  return n;
}

}  // namespace

TEST(Json, RegionsRoundTrip) {
  const WedgeSystem& w = standard_system();
  std::vector<Region> rs{w.table.polygon, w.Zp, zprime4(w), w.piece(1), w.piece(6)};
  for (const auto& r : rs) {
    Json j = to_json(r);
    EXPECT_EQ(region_from_json(Json::parse(j.dump())), r);
  }
}

TEST(Json, ReturnSystemIsExact) {
  const WedgeSystem& w = standard_system();
  auto rs = first_return_map(w, zprime4(w));
  Json j = Json::parse(to_json(rs).dump());
  ASSERT_EQ(j["pieces"].size(), rs.pieces.size());
  for (std::size_t i = 0; i < rs.pieces.size(); ++i) {
    EXPECT_EQ(region_from_json(j["pieces"][i]["source"]), rs.pieces[i].source);
    EXPECT_EQ(j["pieces"][i]["time"].get<std::size_t>(), rs.pieces[i].time);
  }
}

TEST(Json, MalformedInputIsRejected) {
  EXPECT_THROW(point_from_json(Json::parse(R"(["1+0*s3"])")), ParseError);
  EXPECT_THROW(point_from_json(Json::parse(R"(["1+0*s3", "2+x"])")), ParseError);
  EXPECT_THROW(region_from_json(Json::parse(R"({"vertices": []})")), ParseError);
  EXPECT_THROW(region_from_json(Json::parse(R"({"kind": "round", "vertices": []})")), ParseError);
}

TEST(Json, PeriodSetIsSorted) {
  Json j = to_json(full_period_set(40), false);
  ASSERT_TRUE(j.is_array());
  for (std::size_t i = 1; i < j.size(); ++i) EXPECT_LT(j[i - 1].get<long>(), j[i].get<long>());
}

TEST(Svg, Deterministic) {
  const WedgeSystem& w = standard_system();
  Scene s;
  s.layers.push_back({"Z", w.table.Z, "region"});
  s.layers.push_back({"table", w.table.polygon, "table"});
  s.layers.push_back({"O1", w.O[1], "point"});
  s.layers.push_back({"path", Polyline{{pt(0, 0), pt(3, 1), pt(2, 5)}}, "orbit"});
  std::string a = render_svg(s), b = render_svg(s);
  EXPECT_EQ(a, b);
  EXPECT_EQ(count(a, "<path "), 2u);
  EXPECT_EQ(count(a, "<circle "), 1u);
  EXPECT_EQ(count(a, "<polyline "), 1u);
  EXPECT_EQ(a.find("-0.000000000"), std::string::npos);
}

TEST(Svg, DodecagonIsOnePath) {
  Scene s;
  s.layers.push_back({"table", dodecagon(), "table"});
  std::string svg = render_svg(s);
  EXPECT_EQ(count(svg, "<path "), 1u);
  EXPECT_EQ(count(svg, " L"), 11u);
  EXPECT_EQ(count(svg, " Z"), 1u);
}

TEST(Svg, UnboundedNeedsView) {
  Scene s;
  s.layers.push_back({"quadrant", Region::unbounded({pt(0, 0)}, pt(0, 1), pt(1, 0)), "piece"});
  EXPECT_THROW(render_svg(s), DomainError);
  s.view = ViewBox{QS3(-10), QS3(-10), QS3(10), QS3(10)};
  std::string svg = render_svg(s);
  EXPECT_EQ(count(svg, "<path "), 1u);
}

TEST(Svg, BadScenes) {
  EXPECT_THROW(render_svg(Scene{}), DomainError);
  Scene s;
  s.layers.push_back({"a", pt(0, 0), "point"});
  s.layers.push_back({"a", pt(1, 0), "point"});
  EXPECT_THROW(render_svg(s), DomainError);
}
