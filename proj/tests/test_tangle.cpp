#include <doctest.h>
#include <hft/dynamics.hpp>
#include <hft/tangle.hpp>

#include <algorithm>

using namespace hft;

TEST_CASE("manifold parameter total order") {
  ManifoldParam neg2{-1, 2}, neg1{-1, 1}, zero{+1, 0}, pos1{+1, 1};
  CHECK(neg2 < neg1);
  CHECK(neg1 < zero);
  CHECK(zero < pos1);
  CHECK_FALSE(pos1 < zero);
  CHECK(ManifoldParam{-1, 0} == ManifoldParam{+1, 0});
}

TEST_CASE("built-in diagrams validate and round-trip through JSON") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    TangleDiagram d = builtin_example(name);
    auto rep = validate_tangle(d);
    CHECK(rep.ok);
    std::string j1 = tangle_to_json(d);
    TangleDiagram d2 = parse_tangle_json(j1);
    CHECK(tangle_to_json(d2) == j1);
    CHECK(d2.points.size() == d.points.size());
    CHECK(d2.fixed_point == d.fixed_point);
    auto rep2 = validate_tangle(d2);
    CHECK(rep2.ok);
  }
}

TEST_CASE("recomputed intersections agree with the stored points") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    TangleDiagram d = builtin_example(name);
    auto pts = compute_intersections(d);
    REQUIRE(pts.size() == d.points.size());
    // same crossing positions in unstable order (ids differ: h0, h1, ...)
    std::vector<const HomoclinicPoint*> stored;
    for (auto& p : d.points)
      if (!p.is_fixed_point) stored.push_back(&p);
    std::sort(stored.begin(), stored.end(),
              [](auto* a, auto* b) { return a->u < b->u; });
    size_t i = 0;
    for (auto& p : pts) {
      if (p.is_fixed_point) continue;
      REQUIRE(i < stored.size());
      CHECK(p.pos == stored[i]->pos);
      CHECK(p.u == stored[i]->u);
      CHECK(p.s == stored[i]->s);
      CHECK(p.crossing_sign == stored[i]->crossing_sign);
      i++;
    }
  }
}

TEST_CASE("segment endpoints and traversal") {
  TangleDiagram d = builtin_example("fig3a");
  const auto& p = d.point("p");
  const auto& q = d.point("q");
  auto seg = segment(d.unstable, p.u, q.u);
  REQUIRE(seg.size() >= 2);
  CHECK(seg.front() == p.pos);
  CHECK(seg.back() == q.pos);
  auto rev = segment(d.unstable, q.u, p.u);
  CHECK(rev.front() == q.pos);
  CHECK(rev.back() == p.pos);
  CHECK(rev.size() == seg.size());
}

TEST_CASE("points_between excludes endpoints and orders by traversal") {
  TangleDiagram d = builtin_example("fig3b_left");
  // unstable order is q_a, p, q_b, r
  auto mid = points_between(d, "q_a", "r", ManifoldKind::Unstable);
  CHECK(mid == std::vector<std::string>{"p", "q_b"});
  auto rev = points_between(d, "r", "q_a", ManifoldKind::Unstable);
  CHECK(rev == std::vector<std::string>{"q_b", "p"});
  CHECK(points_between(d, "q_a", "p", ManifoldKind::Unstable).empty());
}

TEST_CASE("unknown point ids fail loudly") {
  TangleDiagram d = builtin_example("fig3a");
  CHECK_THROWS_AS(d.point("nope"), Error);
  CHECK(d.find("nope") == nullptr);
  CHECK_THROWS_AS(points_between(d, "p", "nope", ManifoldKind::Stable), Error);
}

TEST_CASE("parse rejects malformed tangle JSON") {
  CHECK_THROWS_AS(parse_tangle_json("not json"), Error);
  CHECK_THROWS_AS(parse_tangle_json("{}"), Error);
}
