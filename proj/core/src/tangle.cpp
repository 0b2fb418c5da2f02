#include "hft/tangle.hpp"

#include <algorithm>
#include <sstream>

namespace hft {

namespace {

RationalPoint lerp(const RationalPoint& a, const RationalPoint& b,
                   const Rat& t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

struct Seg {
  RationalPoint a, b;
  int branch;
  size_t index;  // segment index within the branch polyline
};

// Conservative double-precision bounding box, used only to prune segment
// pairs that certainly do not meet; all accepted pairs are re-tested exactly.
struct Box {
  double xlo, xhi, ylo, yhi;
};

Box box_of(const RationalPoint& a, const RationalPoint& b) {
  double ax = a.x.get_d(), ay = a.y.get_d();
  double bx = b.x.get_d(), by = b.y.get_d();
  const double m = 1e-9;
  return {std::min(ax, bx) - m, std::max(ax, bx) + m, std::min(ay, by) - m,
          std::max(ay, by) + m};
}

bool boxes_meet(const Box& p, const Box& q) {
  return p.xlo <= q.xhi && q.xlo <= p.xhi && p.ylo <= q.yhi && q.ylo <= p.yhi;
}

std::vector<Seg> segments_of(const ManifoldArc& arc) {
  std::vector<Seg> out;
  for (int b : {+1, -1}) {
    const auto& poly = arc.branch(b);
    for (size_t i = 0; i + 1 < poly.size(); ++i)
      out.push_back({poly[i], poly[i + 1], b, i});
  }
  return out;
}

bool on_segment_collinear(const RationalPoint& a, const RationalPoint& b,
                          const RationalPoint& p) {
  // assumes a,b,p collinear; checks p in [a,b]
  if (a.x != b.x) return (p.x >= std::min(a.x, b.x)) && (p.x <= std::max(a.x, b.x));
  return (p.y >= std::min(a.y, b.y)) && (p.y <= std::max(a.y, b.y));
}

}  // namespace

RationalPoint ManifoldArc::at(const ManifoldParam& p) const {
  const auto& poly = branch(p.branch);
  if (p.offset < 0) fail_input("negative manifold offset");
  if (p.offset == 0) return poly.at(0);
  Rat off = p.offset;
  mpz_class i_z = off.get_num() / off.get_den();  // floor for off >= 0
  size_t i = i_z.get_ui();
  Rat t = off - Rat(i_z);
  if (i + 1 >= poly.size()) {
    if (i + 1 == poly.size() && t == 0) return poly.back();
    fail_window("manifold param beyond stored window");
  }
  return lerp(poly[i], poly[i + 1], t);
}

Rat ManifoldArc::max_offset(int b) const {
  return Rat((unsigned long)(branch(b).size() - 1));
}

const HomoclinicPoint* TangleDiagram::find(const std::string& id) const {
  for (const auto& p : points)
    if (p.id == id) return &p;
  return nullptr;
}

const HomoclinicPoint& TangleDiagram::point(const std::string& id) const {
  const HomoclinicPoint* p = find(id);
  if (!p) fail_input("unknown point id: " + id);
  return *p;
}

const HomoclinicPoint& TangleDiagram::fixed() const {
  for (const auto& p : points)
    if (p.is_fixed_point) return p;
  fail_input("diagram has no fixed point record");
}

std::vector<RationalPoint> segment(const ManifoldArc& arc,
                                   const ManifoldParam& a,
                                   const ManifoldParam& b) {
  if (a == b) fail_input("segment endpoints coincide");
  // Work in signed offsets; the polyline for signed range [lo,hi] is assembled
  // then reversed if the traversal runs downward.
  Rat sa = a.signed_offset(), sb = b.signed_offset();
  bool rev = sa > sb;
  Rat lo = rev ? sb : sa, hi = rev ? sa : sb;
  std::vector<RationalPoint> out;
  auto emit = [&out](const RationalPoint& p) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  };
  auto walk_branch = [&](int br, const Rat& from, const Rat& to) {
    // from,to are nonnegative offsets on this branch, from < to
    const auto& poly = arc.branch(br);
    ManifoldParam pa{br, from}, pb{br, to};
    std::vector<RationalPoint> part;
    part.push_back(arc.at(pa));
    for (size_t i = 1; i + 0 < poly.size(); ++i) {
      Rat off((unsigned long)i);
      if (off > from && off < to) part.push_back(poly[i]);
      if (off >= to) break;
    }
    part.push_back(arc.at(pb));
    return part;
  };
  if (lo >= 0) {
    for (const auto& p : walk_branch(+1, lo, hi)) emit(p);
  } else if (hi <= 0) {
    // negative branch: signed s corresponds to offset -s, traversal from lo
    // to hi runs toward the fixed point, i.e. from offset -lo down to -hi.
    auto part = walk_branch(-1, -hi, -lo);
    std::reverse(part.begin(), part.end());
    for (const auto& p : part) emit(p);
  } else {
    auto neg = walk_branch(-1, 0, -lo);
    std::reverse(neg.begin(), neg.end());
    for (const auto& p : neg) emit(p);
    for (const auto& p : walk_branch(+1, 0, hi)) emit(p);
  }
  if (rev) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::string> points_between(const TangleDiagram& d,
                                        const std::string& p,
                                        const std::string& q,
                                        ManifoldKind which) {
  const HomoclinicPoint& P = d.point(p);
  const HomoclinicPoint& Q = d.point(q);
  auto param_of = [&](const HomoclinicPoint& h) {
    return which == ManifoldKind::Unstable ? h.u : h.s;
  };
  Rat sp = param_of(P).signed_offset(), sq = param_of(Q).signed_offset();
  if (sp == sq) fail_input("points share a manifold param");
  std::vector<std::pair<Rat, std::string>> hits;
  for (const auto& h : d.points) {
    Rat s = param_of(h).signed_offset();
    if ((s > std::min(sp, sq)) && (s < std::max(sp, sq)))
      hits.push_back({s, h.id});
  }
  std::sort(hits.begin(), hits.end());
  if (sp > sq) std::reverse(hits.begin(), hits.end());
  std::vector<std::string> out;
  for (auto& [s, id] : hits) out.push_back(id);
  return out;
}

std::vector<HomoclinicPoint> compute_intersections(const TangleDiagram& d) {
  std::vector<HomoclinicPoint> out;
  HomoclinicPoint fx;
  fx.id = "x";
  fx.pos = d.fixed_point;
  fx.u = {+1, 0};
  fx.s = {+1, 0};
  fx.is_fixed_point = true;
  {
    RationalPoint du = d.unstable.branch_pos.at(1) - d.fixed_point;
    RationalPoint ds = d.stable.branch_pos.at(1) - d.fixed_point;
    fx.crossing_sign = sgn(cross(du, ds));
  }
  out.push_back(fx);

  auto us = segments_of(d.unstable);
  auto ss = segments_of(d.stable);
  std::vector<Box> ub, sb;
  for (const auto& u : us) ub.push_back(box_of(u.a, u.b));
  for (const auto& s : ss) sb.push_back(box_of(s.a, s.b));
  for (size_t ui = 0; ui < us.size(); ++ui) {
    const auto& u = us[ui];
    for (size_t si = 0; si < ss.size(); ++si) {
      if (!boxes_meet(ub[ui], sb[si])) continue;
      const auto& s = ss[si];
      RationalPoint r = u.b - u.a, q = s.b - s.a;
      Rat den = cross(r, q);
      if (den == 0) {
        // parallel; overlap would be a tangency, caught in validate
        continue;
      }
      RationalPoint w = s.a - u.a;
      Rat t = cross(w, q) / den;
      Rat v = cross(w, r) / den;
      if (t < 0 || t > 1 || v < 0 || v > 1) continue;
      RationalPoint pt = lerp(u.a, u.b, t);
      if (pt == d.fixed_point) continue;  // shared anchor, recorded above
      bool interior = (t > 0 && t < 1 && v > 0 && v < 1);
      if (!interior)
        fail_input("non-generic crossing at segment endpoint (" +
                   rat_str(pt.x) + ", " + rat_str(pt.y) + ")");
      HomoclinicPoint h;
      h.pos = pt;
      h.u = {u.branch, Rat((unsigned long)u.index) + t};
      h.s = {s.branch, Rat((unsigned long)s.index) + v};
      RationalPoint du = u.branch > 0 ? r : RationalPoint{-r.x, -r.y};
      RationalPoint ds = s.branch > 0 ? q : RationalPoint{-q.x, -q.y};
      h.crossing_sign = sgn(cross(du, ds));
      out.push_back(h);
    }
  }
  std::sort(out.begin() + 1, out.end(),
            [](const HomoclinicPoint& a, const HomoclinicPoint& b) {
              return a.u < b.u;
            });
  for (size_t i = 1; i < out.size(); ++i) out[i].id = "h" + std::to_string(i - 1);
  return out;
}

namespace {

// Intersection check for simplicity validation: do two segments share a point
// other than an allowed common endpoint?
bool segments_touch(const Seg& s1, const Seg& s2,
                    const std::vector<RationalPoint>& allowed_common) {
  RationalPoint r = s1.b - s1.a, q = s2.b - s2.a;
  Rat den = cross(r, q);
  auto allowed = [&](const RationalPoint& p) {
    for (const auto& a : allowed_common)
      if (a == p) return true;
    return false;
  };
  if (den == 0) {
    if (cross(r, s2.a - s1.a) != 0) return false;  // parallel, distinct lines
    // collinear: overlap beyond an allowed shared endpoint?
    for (const auto& p : {s2.a, s2.b})
      if (on_segment_collinear(s1.a, s1.b, p) && !allowed(p)) return true;
    for (const auto& p : {s1.a, s1.b})
      if (on_segment_collinear(s2.a, s2.b, p) && !allowed(p)) return true;
    return false;
  }
  RationalPoint w = s2.a - s1.a;
  Rat t = cross(w, q) / den;
  Rat v = cross(w, r) / den;
  if (t < 0 || t > 1 || v < 0 || v > 1) return false;
  RationalPoint pt{s1.a.x + t * r.x, s1.a.y + t * r.y};
  return !allowed(pt);
}

void check_manifold_simple(const ManifoldArc& arc, const RationalPoint& x0,
                           const char* name, ValidationReport& rep) {
  for (int b : {+1, -1}) {
    const auto& poly = arc.branch(b);
    if (poly.size() < 2) {
      rep.errors.push_back(std::string(name) + " branch has fewer than 2 vertices");
      return;
    }
    if (!(poly[0] == x0))
      rep.errors.push_back(std::string(name) + " branch does not start at the fixed point");
    for (size_t i = 0; i + 1 < poly.size(); ++i)
      if (poly[i] == poly[i + 1])
        rep.errors.push_back(std::string(name) + " branch has a degenerate segment");
  }
  auto segs = segments_of(arc);
  std::vector<Box> boxes;
  for (const auto& s : segs) boxes.push_back(box_of(s.a, s.b));
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      if (!boxes_meet(boxes[i], boxes[j])) continue;
      const Seg &a = segs[i], &c = segs[j];
      std::vector<RationalPoint> allowed;
      if (a.branch == c.branch && c.index == a.index + 1) allowed.push_back(a.b);
      if (a.branch != c.branch && a.index == 0 && c.index == 0)
        allowed.push_back(x0);
      if (segments_touch(a, c, allowed)) {
        rep.errors.push_back(std::string(name) + " manifold is not simple (segments " +
                             std::to_string(i) + "," + std::to_string(j) + ")");
        return;
      }
    }
  }
}

}  // namespace

ValidationReport validate_tangle(const TangleDiagram& d) {
  ValidationReport rep;
  check_manifold_simple(d.unstable, d.fixed_point, "unstable", rep);
  check_manifold_simple(d.stable, d.fixed_point, "stable", rep);
  if (!rep.errors.empty()) {
    rep.ok = false;
    return rep;
  }

  // transversality at the fixed point
  for (int bu : {+1, -1}) {
    for (int bs : {+1, -1}) {
      RationalPoint du = d.unstable.branch(bu).at(1) - d.fixed_point;
      RationalPoint ds = d.stable.branch(bs).at(1) - d.fixed_point;
      if (cross(du, ds) == 0)
        rep.errors.push_back("manifolds not transverse at the fixed point");
    }
  }

  std::vector<HomoclinicPoint> geo;
  try {
    geo = compute_intersections(d);
  } catch (const Error& e) {
    rep.errors.push_back(e.what());
    rep.ok = false;
    return rep;
  }

  // listed points must match the geometry
  size_t fixed_count = 0;
  for (const auto& p : d.points) {
    if (p.is_fixed_point) {
      ++fixed_count;
      if (!(p.pos == d.fixed_point))
        rep.errors.push_back("fixed point record position mismatch");
      continue;
    }
    const HomoclinicPoint* match = nullptr;
    for (const auto& g : geo)
      if (!g.is_fixed_point && g.pos == p.pos) match = &g;
    if (!match) {
      rep.errors.push_back("point " + p.id + " is not a crossing of the arcs");
      continue;
    }
    if (!(match->u == p.u) || !(match->s == p.s))
      rep.errors.push_back("point " + p.id + " has inconsistent manifold params");
    if (match->crossing_sign != p.crossing_sign)
      rep.errors.push_back("point " + p.id + " has wrong crossing sign");
  }
  if (fixed_count != 1)
    rep.errors.push_back("diagram must list exactly one fixed point record");

  // duplicate ids / duplicate params
  for (size_t i = 0; i < d.points.size(); ++i)
    for (size_t j = i + 1; j < d.points.size(); ++j) {
      if (d.points[i].id == d.points[j].id)
        rep.errors.push_back("duplicate point id " + d.points[i].id);
      if (d.points[i].pos == d.points[j].pos)
        rep.errors.push_back("duplicate point position for " + d.points[i].id +
                             "," + d.points[j].id);
    }

  // every geometric crossing should be listed
  for (const auto& g : geo) {
    if (g.is_fixed_point) continue;
    bool listed = false;
    for (const auto& p : d.points)
      if (p.pos == g.pos) listed = true;
    if (!listed)
      rep.warnings.push_back("unlisted crossing at (" + rat_str(g.pos.x) + ", " +
                             rat_str(g.pos.y) + ")");
  }

  // strong intersection: each unstable branch meets each stable branch
  bool met[2][2] = {{false, false}, {false, false}};
  for (const auto& g : geo) {
    if (g.is_fixed_point) continue;
    met[g.u.branch > 0 ? 0 : 1][g.s.branch > 0 ? 0 : 1] = true;
  }
  rep.strongly_intersecting = met[0][0] && met[0][1] && met[1][0] && met[1][1];
  if (!rep.strongly_intersecting)
    rep.warnings.push_back("tangle window is not strongly intersecting");

  rep.ok = rep.errors.empty();
  return rep;
}

}  // namespace hft
