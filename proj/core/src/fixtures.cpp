#include <algorithm>
#include <vector>

#include "hft/dynamics.hpp"
#include "hft/tangle.hpp"

namespace hft {

namespace {

// Fixture coordinates are exact tenths.
RationalPoint P(int tx, int ty) {
  Rat x(tx, 10), y(ty, 10);
  x.canonicalize();
  y.canonicalize();
  return {x, y};
}

using Poly = std::vector<RationalPoint>;

TangleDiagram assemble(const std::string& name, RationalPoint fixed,
                       Poly upos, Poly uneg, Poly spos, Poly sneg,
                       const std::vector<std::string>& names_in_u_order) {
  TangleDiagram d;
  d.name = name;
  d.fixed_point = fixed;
  d.unstable.kind = ManifoldKind::Unstable;
  d.unstable.branch_pos = std::move(upos);
  d.unstable.branch_neg = std::move(uneg);
  d.stable.kind = ManifoldKind::Stable;
  d.stable.branch_pos = std::move(spos);
  d.stable.branch_neg = std::move(sneg);
  d.metadata_json = "{\"generator\":\"builtin\",\"figure\":\"" + name + "\"}";
  d.points = compute_intersections(d);
  if (d.points.size() != names_in_u_order.size() + 1)
    fail_internal("fixture " + name + " has " +
                  std::to_string(d.points.size() - 1) + " crossings, expected " +
                  std::to_string(names_in_u_order.size()));
  for (size_t i = 0; i < names_in_u_order.size(); ++i)
    d.points[i + 1].id = names_in_u_order[i];
  ValidationReport rep = validate_tangle(d);
  if (!rep.ok) fail_internal("fixture " + name + " failed validation: " +
                             (rep.errors.empty() ? "" : rep.errors.front()));
  return d;
}

TangleDiagram make_fig3a() {
  return assemble(
      "fig3a", P(100, 0),
      {P(100, 0), P(98, -10), P(82, -10), P(78, 10), P(76, 15), P(24, 15),
       P(22, 10), P(18, -10), P(48, -10), P(52, 10)},
      {P(100, 0), P(110, 10)}, {P(100, 0), P(0, 0)}, {P(100, 0), P(120, 0)},
      {"p", "q", "r"});
}

TangleDiagram make_fig3b_left(const std::string& name) {
  return assemble(
      name, P(0, 0),
      {P(0, 0), P(1, 20), P(60, 20), P(60, -10), P(40, -10), P(40, 10),
       P(20, 10), P(20, -20), P(80, -20), P(80, 10), P(85, 12)},
      {P(0, 0), P(-1, -20)}, {P(0, 0), P(100, 0)}, {P(0, 0), P(-20, 0)},
      {"q_a", "p", "q_b", "r"});
}

TangleDiagram make_fig3b_right() {
  // point mirror (x,y) -> (-x,-y) of fig3b_left: orientation preserving,
  // same combinatorics, concavity on the other side
  auto flip = [](Poly p) {
    for (auto& v : p) v = {-v.x, -v.y};
    return p;
  };
  return assemble(
      "fig3b_right", P(0, 0),
      flip({P(0, 0), P(1, 20), P(60, 20), P(60, -10), P(40, -10), P(40, 10),
            P(20, 10), P(20, -20), P(80, -20), P(80, 10), P(85, 12)}),
      flip({P(0, 0), P(-1, -20)}), flip({P(0, 0), P(100, 0)}),
      flip({P(0, 0), P(-20, 0)}), {"q_a", "p", "q_b", "r"});
}

TangleDiagram make_fig6(const std::string& name) {
  return assemble(
      name, P(0, 0),
      {P(0, 0), P(1, 10), P(19, 10), P(21, -10), P(39, -10), P(41, 10),
       P(59, 10), P(61, -10), P(79, -10), P(81, 10), P(83, 12)},
      {P(0, 0), P(-1, -10)}, {P(0, 0), P(100, 0)}, {P(0, 0), P(-20, 0)},
      {"p", "q", "r", "s"});
}

TangleDiagram make_cascade() {
  return assemble(
      "cascade", P(0, 0),
      {P(0, 0), P(1, 30), P(75, 30), P(75, -5), P(70, -5), P(70, 5), P(60, 5),
       P(60, -2), P(40, -2), P(40, 10), P(20, 10), P(20, -20), P(80, -20),
       P(80, 10), P(83, 12)},
      {P(0, 0), P(-1, -20)}, {P(0, 0), P(100, 0)}, {P(0, 0), P(-20, 0)},
      {"m", "p_t", "q_a", "p", "q_b", "r"});
}

TangleDiagram make_fig4() {
  return assemble(
      "fig4", P(-40, 0),
      {P(-40, 0), P(-38, -3), P(-20, -3), P(-20, 5), P(-60, 5), P(-60, -10),
       P(-100, -10), P(-100, 20), P(0, 20), P(0, -20), P(98, -20),
       P(100, -20), P(100, 10), P(60, 10), P(60, -5), P(20, -5), P(20, 3),
       P(23, 4)},
      {P(-40, 0), P(-42, 3)}, {P(-40, 0), P(110, 0)}, {P(-40, 0), P(-110, 0)},
      {"q3p", "q2p", "q1p", "p", "q1", "q2", "q3"});
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"fig3a", "fig3b_left", "fig3b_right", "fig4",
          "fig5",  "fig6a",      "fig6b",       "cascade"};
}

TangleDiagram builtin_example(const std::string& name) {
  if (name == "fig3a") return make_fig3a();
  if (name == "fig3b_left") return make_fig3b_left("fig3b_left");
  if (name == "fig3b_right") return make_fig3b_right();
  if (name == "fig5") return make_fig3b_left("fig5");
  if (name == "fig6a") return make_fig6("fig6a");
  if (name == "fig6b") return make_fig6("fig6b");
  if (name == "fig4") return make_fig4();
  if (name == "cascade") return make_cascade();
  fail_input("unknown builtin example: " + name);
}

}  // namespace hft
