// Command-line front end. Exit codes: 0 pass, 1 check failure, 2 inconclusive
// (an iteration cap was hit), 3 usage or input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dodeca/acceptance.hpp"
#include "dodeca/billiard.hpp"
#include "dodeca/dynamics.hpp"
#include "dodeca/export.hpp"
#include "dodeca/periods.hpp"
#include "dodeca/render.hpp"
#include "dodeca/similarity.hpp"

using namespace dodeca;

namespace {

enum Exit { kPass = 0, kFail = 1, kInconclusive = 2, kUsage = 3 };

struct Options {
  std::string format = "json";
  std::uint64_t seed = 1;
  std::size_t max_iter = 0;
};

Point parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("point must be \"<x>,<y>\"", text.size());
  QS3 x = QS3::parse(text.substr(0, comma));
  try {
    return {x, QS3::parse(text.substr(comma + 1))};
  } catch (const ParseError& e) {
    throw ParseError("bad y coordinate", comma + 1 + e.position);
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path);
  f << data;
}

Region named_region(const WedgeSystem& w, const std::string& name) {
  if (name == "z" || name == "zprime") return w.Zp;
  if (name == "z1") return apply_map(gamma1(w), w.Zp);
  if (name == "z4") return zprime4(w);
  if (name == "z14") return zprime14(w);
  if (name == "x") return build_similarity(w).X;
  std::ifstream f(name);
  if (!f) throw DomainError("unknown region \"" + name + "\" (z1, z4, z14, x or a JSON file)");
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("region file: ") + e.what(), e.byte);
  }
  return region_from_json(j);
}

Json named_points(const WedgeSystem& w) {
  const Table& t = w.table;
  Json j;
  for (int k = 0; k < 12; ++k) j["A" + std::to_string(k)] = to_json(t.A[k]);
  for (int k = 0; k < 12; ++k) j["C" + std::to_string(k)] = to_json(t.C[k]);
  for (int k = 1; k <= 5; ++k) j["P" + std::to_string(k)] = to_json(w.P[k]);
  for (int k = 2; k <= 6; ++k) j["Q" + std::to_string(k)] = to_json(w.Q[k]);
  for (int k = 1; k <= 5; ++k) j["O" + std::to_string(k)] = to_json(w.O[k]);
  for (int i = 0; i < 12; ++i)
    for (int k = 0; k < 12; ++k) j["A^" + std::to_string(i) + "_" + std::to_string(k)] = to_json(t.mirrored(i, k));
  return j;
}

int cmd_build(const WedgeSystem& w, bool dump) {
  if (dump) {
    emit(named_points(w));
    return kPass;
  }
  std::cout << "table: regular 12-gon, circumradius 2, area " << area(w.table.polygon).str() << "\n";
  std::cout << "Z: " << w.table.Z.vertices().size() << " vertices, area " << area(w.table.Z).str() << "\n";
  std::cout << "Z': area " << area(w.Zp).str() << "\n";
  for (int k = 1; k <= 5; ++k) std::cout << "O" << k << " = (" << w.O[k].str() << ")\n";
  return kPass;
}

int cmd_orbit(const WedgeSystem& w, const Options& o, const std::string& pt, std::size_t steps, std::size_t back,
              const std::string& map) {
  Point p = parse_point(pt);
  Json j;
  j["point"] = to_json(p);
  if (map == "Tprime") {
    auto it = compute_itinerary(w, p, steps, back);
    j["itinerary"] = symbols_str(it.symbols);
    j["backward"] = it.backward;
    j["forward"] = it.forward;
    j["first"] = to_json(it.first);
    j["last"] = to_json(it.last);
    j["stopped"] = it.stopped ? Json(*it.stopped) : Json(nullptr);
    if (o.format == "text") {
      std::cout << symbols_str(it.symbols) << "\n" << it.last.str() << "\n";
      if (it.stopped) std::cout << "stopped: " << *it.stopped << "\n";
    } else {
      emit(j);
    }
    return kPass;
  }
  if (map != "T") throw DomainError("--map must be T or Tprime");
  Point first = p, last = p;
  std::string stopped;
  std::size_t nb = 0, nf = 0;
  try {
    for (; nb < back; ++nb) first = billiard_step(w.table, first, Direction::backward);
    for (; nf < steps; ++nf) last = billiard_step(w.table, last);
  } catch (const GraneError& e) {
    stopped = e.what();
  }
  j["backward"] = nb;
  j["forward"] = nf;
  j["first"] = to_json(first);
  j["last"] = to_json(last);
  j["stopped"] = stopped.empty() ? Json(nullptr) : Json(stopped);
  if (o.format == "text") {
    std::cout << last.str() << "\n";
    if (!stopped.empty()) std::cout << "stopped: " << stopped << "\n";
  } else {
    emit(j);
  }
  return kPass;
}

int cmd_component(const WedgeSystem& w, const Options& o, const std::string& pt) {
  Component c = find_periodic_component(w, parse_point(pt), default_cap(1000000));
  if (o.format == "text") {
    auto per = component_periods(c);
    std::cout << c.region.vertices().size() << "-gon, per_T' " << c.per_tprime << ", l " << c.rotation_l
              << ", per_T " << per.t_component << " (others " << per.t_other << ")\n";
  } else {
    emit(to_json(c));
  }
  return kPass;
}

int cmd_first_return(const WedgeSystem& w, const Options& o, const std::string& region) {
  auto rs = first_return_map(w, named_region(w, region), default_cap(100000));
  if (o.format == "text") {
    std::cout << rs.pieces.size() << " pieces, " << rs.events << " events\n";
    for (const auto& p : rs.pieces)
      std::cout << "  " << p.source.vertices().size() << " vertices" << (p.source.convex() ? "" : " (nonconvex)")
                << ", time " << p.time << ", area " << area(p.source).str() << "\n";
  } else {
    emit(to_json(rs));
  }
  return kPass;
}

int cmd_partition(const WedgeSystem& w, const Options& o, const std::string& region) {
  auto rep = verify_partition(w, named_region(w, region), default_cap(100000), default_cap(1000000));
  if (o.format == "text") {
    std::cout << "n = " << rep.periodic.size() << ", periods";
    for (auto p : rep.periods()) std::cout << " " << p;
    std::cout << "\narea identity " << (rep.area_identity ? "holds" : "FAILS") << ": " << rep.domain_area.str()
              << " = " << rep.return_tube_area.str() << " + " << rep.periodic_tube_area.str() << "\n";
  } else {
    emit(to_json(rep));
  }
  return rep.area_identity ? kPass : kFail;
}

int cmd_aperiodic(const WedgeSystem& w, const Options& o, std::size_t steps, std::size_t depth,
                  const std::string& spiral_out, std::size_t spiral_count) {
  auto s = build_similarity(w);
  auto wit = aperiodic_witness(w, s, steps, depth);
  Json j = to_json(wit);
  j["seed"] = o.seed;
  if (!spiral_out.empty()) {
    auto f4 = return_map(first_return_map(w, s.Z4));
    Json arr = Json::array();
    for (const auto& f : spiral(w, s, f4, spiral_count)) {
      Json e;
      e["region"] = to_json(f.region);
      e["per_tprime"] = f.tprime_period;
      e["per_induced"] = f.induced_period ? Json(*f.induced_period) : Json(nullptr);
      arr.push_back(std::move(e));
    }
    Json sj;
    sj["X"] = to_json(s.X);
    sj["y"] = to_json(wit.y);
    sj["figures"] = std::move(arr);
    write_file(spiral_out, sj.dump(2) + "\n");
  }
  if (o.format == "text") {
    std::cout << "y = (" << wit.y.str() << ")\nno return within " << wit.steps << " steps"
              << (wit.boundary_hit ? " (boundary hit)" : "") << "\nnested to depth " << depth << ": "
              << (wit.nested ? "yes" : "NO") << "\n";
  } else {
    emit(j);
  }
  return wit.ok() ? kPass : kFail;
}

int cmd_periods(const Options& o, unsigned long bound, const std::string& out, bool witnesses) {
  auto s = full_period_set(bound);
  Json j = to_json(s, witnesses);
  if (!out.empty()) write_file(out, j.dump(2) + "\n");
  if (o.format == "text") {
    for (auto p : s.periods) std::cout << p << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
  return kPass;
}

Scene figure(const WedgeSystem& w, const std::string& name, std::size_t spiral_count) {
  Scene sc;
  const Table& t = w.table;
  if (name == "table") {
    sc.layers.push_back({"Z", t.Z, "region"});
    for (int i = 0; i < 12; ++i) sc.layers.push_back({"gamma" + std::to_string(i), t.gamma[i], "piece"});
    sc.layers.push_back({"table", t.polygon, "table"});
    return sc;
  }
  if (name == "components") {
    // the pieces are unbounded; show a whole-number box around Z'
    auto b = w.Zp.float_box();
    auto lo = [](double v) { return QS3(static_cast<long>(std::floor(v)) - 1); };
    auto hi = [](double v) { return QS3(static_cast<long>(std::ceil(v)) + 1); };
    sc.view = ViewBox{lo(b.x0), lo(b.y0), hi(b.x1), hi(b.y1)};
    sc.layers.push_back({"Zprime", w.Zp, "region"});
    for (int i = 1; i <= 6; ++i) sc.layers.push_back({"alpha" + std::to_string(i), w.piece(i), "piece"});
    for (int i = 1; i <= 4; ++i)
      sc.layers.push_back({"W" + std::to_string(i), find_periodic_component(w, w.O[i]).region, "component"});
    return sc;
  }
  if (name == "partition") {
    auto rep = verify_partition(w, zprime4(w), default_cap(100000), default_cap(1000000));
    sc.layers.push_back({"Zprime", w.Zp, "region"});
    std::size_t k = 0;
    for (const auto& tube : rep.tubes)
      for (const auto& r : tube) sc.layers.push_back({"green" + std::to_string(k++), r, "green"});
    k = 0;
    for (const auto& p : rep.periodic)
      for (const auto& r : p.orbit) sc.layers.push_back({"red" + std::to_string(k++), r, "red"});
    return sc;
  }
  if (name == "spiral") {
    auto s = build_similarity(w);
    auto f4 = return_map(first_return_map(w, s.Z4));
    sc.layers.push_back({"X", s.X, "region"});
    std::size_t k = 0;
    for (const auto& f : spiral(w, s, f4, spiral_count))
      sc.layers.push_back({"Y" + std::to_string(k++), f.region, "spiral"});
    sc.layers.push_back({"y", s.gammaX.fixed_point(), "point"});
    return sc;
  }
  throw DomainError("unknown figure \"" + name + "\" (table, components, partition, spiral)");
}

int cmd_render(const WedgeSystem& w, const std::string& name, const std::string& out, std::size_t spiral_count) {
  std::string svg = render_svg(figure(w, name, spiral_count));
  if (out.empty()) {
    std::cout << svg;
  } else {
    write_file(out, svg);
  }
  return kPass;
}

int cmd_verify(const Options& o) {
  Acceptance acc(standard_system(), o.seed);
  Json rows = Json::array();
  int code = kPass;
  acc.run_all([&](const CheckResult& r) {
    if (o.format == "text") {
      std::printf("%2d %-26s %-12s %7.2fs  %s\n", r.id, r.name.c_str(), outcome_str(r.outcome), r.seconds,
                  r.detail.c_str());
      std::fflush(stdout);
    }
    Json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["outcome"] = outcome_str(r.outcome);
    j["seconds"] = r.seconds;
    j["detail"] = r.detail;
    rows.push_back(std::move(j));
    if (r.outcome == Outcome::fail) code = kFail;
    if (r.outcome == Outcome::inconclusive && code == kPass) code = kInconclusive;
  });
  if (o.format != "text") {
    Json j;
    j["seed"] = o.seed;
    j["checks"] = std::move(rows);
    emit(j);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact outer billiard outside the regular 12-gon"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks");
  app.add_option("--max-iter", o.max_iter, "Iteration cap for every search (overrides DODECA_MAX_ITER)")
      ->check(CLI::PositiveNumber);

  bool dump = false;
  auto* build = app.add_subcommand("build", "Construct the table and the wedge map");
  build->add_flag("--dump-json", dump, "Print every named point");

  std::string point, map = "Tprime", region, out, spiral_out, figure_name;
  std::size_t steps = 10, back = 0, depth = 8, spiral_count = 8;
  unsigned long bound = 2000;
  bool witnesses = false;

  auto* orbit = app.add_subcommand("orbit", "Iterate T or T' from a point");
  orbit->add_option("--point", point, "\"<x>,<y>\" in literal format")->required();
  orbit->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
  orbit->add_option("--backward", back)->check(CLI::NonNegativeNumber);
  orbit->add_option("--map", map)->check(CLI::IsMember({"T", "Tprime"}));

  auto* component = app.add_subcommand("component", "Periodic component through a point (Algorithm 1)");
  component->add_option("--point", point)->required();

  auto* first = app.add_subcommand("first-return", "First-return map of T' (Algorithm 2)");
  first->add_option("--region", region, "z1, z4, z14, x or a region JSON file")->required();

  auto* part = app.add_subcommand("verify-partition", "Z' = return tubes + periodic tubes");
  part->add_option("--region", region, "z4 or z14")->required();

  auto* aper = app.add_subcommand("aperiodic", "Certificate for the aperiodic point");
  aper->add_option("--steps", steps = 10000);
  aper->add_option("--depth", depth);
  aper->add_option("--emit-spiral", spiral_out, "Write the spiral figures as JSON");
  aper->add_option("--spiral-count", spiral_count);

  auto* per = app.add_subcommand("periods", "Enumerate the period set");
  per->add_option("--bound", bound)->check(CLI::PositiveNumber);
  per->add_option("--json", out, "Also write the JSON to this file");
  per->add_flag("--witnesses", witnesses);

  auto* render = app.add_subcommand("render", "Write an SVG figure");
  render->add_option("--figure", figure_name, "table, components, partition or spiral")->required();
  render->add_option("--out", out);
  render->add_option("--spiral-count", spiral_count);

  auto* verify = app.add_subcommand("verify", "Run every acceptance check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }
  if (o.max_iter > 0) setenv("DODECA_MAX_ITER", std::to_string(o.max_iter).c_str(), 1);

  try {
    const WedgeSystem& w = standard_system();
    if (*build) return cmd_build(w, dump);
    if (*orbit) return cmd_orbit(w, o, point, steps, back, map);
    if (*component) return cmd_component(w, o, point);
    if (*first) return cmd_first_return(w, o, region);
    if (*part) return cmd_partition(w, o, region);
    if (*aper) return cmd_aperiodic(w, o, steps, depth, spiral_out, spiral_count);
    if (*per) return cmd_periods(o, bound, out, witnesses);
    if (*render) return cmd_render(w, figure_name, out, spiral_count);
    if (*verify) return cmd_verify(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive after " << e.iterations << " iterations: " << e.what() << "\n";
    return kInconclusive;
  } catch (const GraneError& e) {
    std::cerr << "boundary: " << e.what() << " (after " << e.step << " steps)\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
