#include <json.hpp>

#include "hft/tangle.hpp"

namespace hft {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

RationalPoint parse_pt(const json& j) {
  if (!j.is_array() || j.size() != 2) fail_input("point must be a [x, y] pair");
  auto one = [](const json& v) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    fail_input("rational must be an \"a/b\" string");
  };
  return {one(j[0]), one(j[1])};
}

std::vector<RationalPoint> parse_poly(const json& j) {
  std::vector<RationalPoint> out;
  if (!j.is_array()) fail_input("branch polyline must be an array");
  for (const auto& v : j) out.push_back(parse_pt(v));
  return out;
}

ManifoldParam parse_param(const json& j) {
  ManifoldParam p;
  std::string b = j.at("branch").get<std::string>();
  if (b == "+") p.branch = +1;
  else if (b == "-") p.branch = -1;
  else fail_input("branch must be \"+\" or \"-\"");
  p.offset = parse_rat(j.at("offset").get<std::string>());
  if (p.offset < 0) fail_input("unordered param: negative offset");
  return p;
}

ManifoldArc parse_arc(const json& j, ManifoldKind kind) {
  ManifoldArc arc;
  arc.kind = kind;
  std::string o = j.at("orientation").get<std::string>();
  if (o != "+" && o != "-") fail_input("orientation must be \"+\" or \"-\"");
  arc.orient = o[0];
  arc.branch_pos = parse_poly(j.at("branch_pos"));
  arc.branch_neg = parse_poly(j.at("branch_neg"));
  return arc;
}

ordered_json pt_json(const RationalPoint& p) {
  return ordered_json::array({rat_str(p.x), rat_str(p.y)});
}

ordered_json poly_json(const std::vector<RationalPoint>& poly) {
  ordered_json a = ordered_json::array();
  for (const auto& p : poly) a.push_back(pt_json(p));
  return a;
}

ordered_json param_json(const ManifoldParam& p) {
  ordered_json j;
  j["branch"] = p.branch > 0 ? "+" : "-";
  j["offset"] = rat_str(p.offset);
  return j;
}

}  // namespace

TangleDiagram parse_tangle_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail_input(std::string("bad JSON: ") + e.what());
  }
  try {
    if (j.at("ambient").get<std::string>() != "plane")
      fail_input("ambient must be \"plane\"");
    TangleDiagram d;
    d.fixed_point = parse_pt(j.at("fixed_point"));
    d.unstable = parse_arc(j.at("unstable"), ManifoldKind::Unstable);
    d.stable = parse_arc(j.at("stable"), ManifoldKind::Stable);
    if (j.contains("metadata")) {
      d.metadata_json = j["metadata"].dump();
      if (j["metadata"].contains("name"))
        d.name = j["metadata"]["name"].get<std::string>();
    }
    if (j.contains("points")) {
      for (const auto& pj : j["points"]) {
        HomoclinicPoint h;
        h.id = pj.at("id").get<std::string>();
        h.u = parse_param(pj.at("u_param"));
        h.s = parse_param(pj.at("s_param"));
        h.crossing_sign = pj.at("crossing_sign").get<int>();
        h.is_fixed_point = pj.value("fixed", false);
        h.pos = d.unstable.at(h.u);
        RationalPoint via_s = d.stable.at(h.s);
        if (!(h.pos == via_s))
          fail_input("point " + h.id + ": u_param and s_param disagree");
        d.points.push_back(h);
      }
      // presence of points => verified against recomputation
      ValidationReport rep = validate_tangle(d);
      for (const auto& e : rep.errors) fail_input("point verification: " + e);
    } else {
      d.points = compute_intersections(d);
    }
    return d;
  } catch (const json::exception& e) {
    fail_input(std::string("bad tangle JSON: ") + e.what());
  }
}

std::string tangle_to_json(const TangleDiagram& d) {
  ordered_json j;
  j["ambient"] = "plane";
  j["fixed_point"] = pt_json(d.fixed_point);
  for (auto [key, arc] : {std::pair<const char*, const ManifoldArc*>{"unstable", &d.unstable},
                          {"stable", &d.stable}}) {
    ordered_json a;
    a["orientation"] = std::string(1, arc->orient);
    a["branch_pos"] = poly_json(arc->branch_pos);
    a["branch_neg"] = poly_json(arc->branch_neg);
    j[key] = a;
  }
  ordered_json pts = ordered_json::array();
  for (const auto& p : d.points) {
    ordered_json pj;
    pj["id"] = p.id;
    pj["u_param"] = param_json(p.u);
    pj["s_param"] = param_json(p.s);
    pj["crossing_sign"] = p.crossing_sign;
    if (p.is_fixed_point) pj["fixed"] = true;
    pts.push_back(pj);
  }
  j["points"] = pts;
  j["metadata"] = json::parse(d.metadata_json);
  return j.dump(2) + "\n";
}

}  // namespace hft
