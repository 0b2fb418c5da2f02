#include "hft/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

namespace hft {

namespace {

using P = RationalPoint;

struct Edge {
  P a, b;
};

// Double shadow of an edge, used only to skip edges that certainly cannot
// matter for a given exact query; any borderline case falls back to exact
// arithmetic, so the filters never change results.
struct DEdge {
  double ax, ay, bx, by;
};

constexpr double kEps = 1e-9;

DEdge shadow_of(const Edge& e) {
  return {e.a.x.get_d(), e.a.y.get_d(), e.b.x.get_d(), e.b.y.get_d()};
}

std::vector<Edge> loop_edges(const PairLoop& loop) {
  std::vector<Edge> out;
  size_t n = loop.pts.size();
  for (size_t i = 0; i < n; ++i) out.push_back({loop.pts[i], loop.pts[(i + 1) % n]});
  return out;
}

// Edge list plus cached double shadows for the prefilters.
struct EdgeSet {
  std::vector<Edge> ex;
  std::vector<DEdge> dd;
  explicit EdgeSet(std::vector<Edge> e) : ex(std::move(e)) {
    dd.reserve(ex.size());
    for (const auto& g : ex) dd.push_back(shadow_of(g));
  }
};

// ---- winding numbers ------------------------------------------------------

int winding_edge_exact(const Edge& e, const P& z) {
  if (e.a.y <= z.y) {
    if (e.b.y > z.y && cross(e.a, e.b, z) > 0) return 1;
  } else {
    if (e.b.y <= z.y && cross(e.a, e.b, z) < 0) return -1;
  }
  return 0;
}

int winding_edges(const std::vector<Edge>& edges, const P& z) {
  int wn = 0;
  for (const auto& e : edges) wn += winding_edge_exact(e, z);
  return wn;
}

int winding_edges(const EdgeSet& es, const P& z) {
  double zx = z.x.get_d(), zy = z.y.get_d();
  int wn = 0;
  for (size_t i = 0; i < es.ex.size(); ++i) {
    const DEdge& d = es.dd[i];
    // clearly outside the horizontal strip of the upward ray test
    if ((d.ay > zy + kEps && d.by > zy + kEps) ||
        (d.ay < zy - kEps && d.by < zy - kEps)) continue;
    // straddles: if the crossing sign is clearly resolvable, decide in double
    double c = (d.bx - d.ax) * (zy - d.ay) - (d.by - d.ay) * (zx - d.ax);
    bool ya_clear = std::fabs(d.ay - zy) > kEps, yb_clear = std::fabs(d.by - zy) > kEps;
    if (ya_clear && yb_clear && std::fabs(c) > kEps) {
      if (d.ay <= zy) {
        if (d.by > zy && c > 0) ++wn;
      } else {
        if (d.by <= zy && c < 0) --wn;
      }
      continue;
    }
    wn += winding_edge_exact(es.ex[i], z);
  }
  return wn;
}

bool point_on_edge(const Edge& e, const P& z) {
  if (cross(e.a, e.b, z) != 0) return false;
  if (e.a.x != e.b.x)
    return z.x >= std::min(e.a.x, e.b.x) && z.x <= std::max(e.a.x, e.b.x);
  return z.y >= std::min(e.a.y, e.b.y) && z.y <= std::max(e.a.y, e.b.y);
}

// ---- sampling the induced subdivision -------------------------------------

// Smallest positive parameter t for which m + t*dir meets some edge; 0 if the
// ray is clean. Intersections exactly at m (t == 0) are ignored.
Rat min_ray_hit_exact(const std::vector<Edge>& edges, const P& m, const P& dir) {
  Rat best = 0;
  bool have = false;
  for (const auto& e : edges) {
    P r = e.b - e.a;
    Rat den = cross(dir, r);
    if (den == 0) {
      // ray parallel to edge; if collinear the edge may block the ray
      if (cross(dir, e.a - m) != 0) continue;
      for (const P& c : {e.a, e.b}) {
        Rat t = (dir.x != 0) ? (c.x - m.x) / dir.x : (c.y - m.y) / dir.y;
        if (t > 0 && (!have || t < best)) { best = t; have = true; }
      }
      continue;
    }
    Rat t = cross(e.a - m, r) / den;
    Rat s = cross(e.a - m, dir) / den;
    if (t > 0 && s >= 0 && s <= 1) {
      if (!have || t < best) { best = t; have = true; }
    }
  }
  return have ? best : Rat(0);
}

// Prefiltered version: edges that clearly miss the ray (in double, with
// margin) are skipped; the survivors are handed to the exact routine.
Rat min_ray_hit(const EdgeSet& es, const P& m, const P& dir) {
  double mx = m.x.get_d(), my = m.y.get_d();
  double dx = dir.x.get_d(), dy = dir.y.get_d();
  double nd = std::hypot(dx, dy);
  if (nd > 0) { dx /= nd; dy /= nd; }
  std::vector<Edge> keep;
  for (size_t i = 0; i < es.ex.size(); ++i) {
    const DEdge& e = es.dd[i];
    // both endpoints clearly behind m, or clearly on one side of the ray line
    double pa = (e.ax - mx) * dx + (e.ay - my) * dy;
    double pb = (e.bx - mx) * dx + (e.by - my) * dy;
    if (pa < -kEps && pb < -kEps) continue;
    double ca = dx * (e.ay - my) - dy * (e.ax - mx);
    double cb = dx * (e.by - my) - dy * (e.bx - mx);
    if ((ca > kEps && cb > kEps) || (ca < -kEps && cb < -kEps)) continue;
    keep.push_back(es.ex[i]);
  }
  return min_ray_hit_exact(keep, m, dir);
}

P offset_sample(const EdgeSet& edges, const P& m, const P& dir) {
  Rat t = min_ray_hit(edges, m, dir);
  Rat step = (t == 0) ? Rat(1) : t / 2;
  return {m.x + step * dir.x, m.y + step * dir.y};
}

// Sample points on both sides of every sub-edge (edges split at all mutual
// crossings). Every face of the arrangement owns at least one sample.
std::vector<P> side_samples(const EdgeSet& es) {
  const std::vector<Edge>& edges = es.ex;
  std::vector<P> out;
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const DEdge& de = es.dd[i];
    double exlo = std::min(de.ax, de.bx) - kEps, exhi = std::max(de.ax, de.bx) + kEps;
    double eylo = std::min(de.ay, de.by) - kEps, eyhi = std::max(de.ay, de.by) + kEps;
    std::vector<Rat> cuts{Rat(0), Rat(1)};
    P r = e.b - e.a;
    for (size_t j = 0; j < edges.size(); ++j) {
      if (j == i) continue;
      const DEdge& df = es.dd[j];
      if (std::min(df.ax, df.bx) > exhi || std::max(df.ax, df.bx) < exlo ||
          std::min(df.ay, df.by) > eyhi || std::max(df.ay, df.by) < eylo)
        continue;
      const Edge& f = edges[j];
      P q = f.b - f.a;
      Rat den = cross(r, q);
      if (den == 0) continue;
      Rat t = cross(f.a - e.a, q) / den;
      Rat s = cross(f.a - e.a, r) / den;
      if (t > 0 && t < 1 && s > 0 && s < 1) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    P left{-r.y, r.x};   // left of travel direction
    P right{r.y, -r.x};
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      Rat tm = (cuts[k] + cuts[k + 1]) / 2;
      P m{e.a.x + tm * r.x, e.a.y + tm * r.y};
      out.push_back(offset_sample(es, m, left));
      out.push_back(offset_sample(es, m, right));
    }
  }
  return out;
}

// Direction strictly inside the sector swept counterclockwise from u to v.
P sector_bisector(const P& u, const P& v) {
  Rat c = cross(u, v);
  P sum{u.x + v.x, u.y + v.y};
  if (c > 0) return sum;
  if (c < 0) return {-sum.x, -sum.y};
  // v == -u (straight); perpendicular picks one half-plane deterministically
  return {-u.y, u.x};
}

}  // namespace

PairLoop pair_loop(const TangleDiagram& d, const std::string& p,
                   const std::string& q) {
  const HomoclinicPoint& P1 = d.point(p);
  const HomoclinicPoint& Q1 = d.point(q);
  if (p == q) fail_input("pair loop needs two distinct points");
  auto upart = segment(d.unstable, P1.u, Q1.u);
  auto spart = segment(d.stable, Q1.s, P1.s);
  PairLoop loop;
  loop.corner_p = 0;
  for (size_t i = 0; i + 1 < upart.size(); ++i) loop.pts.push_back(upart[i]);
  loop.corner_q = loop.pts.size();
  for (size_t i = 0; i + 1 < spart.size(); ++i) loop.pts.push_back(spart[i]);
  if (loop.pts.size() < 3) fail_internal("degenerate pair loop");
  return loop;
}

int winding_number(const PairLoop& loop, const RationalPoint& z) {
  return winding_edges(loop_edges(loop), z);
}

LoopSubdivision subdivide_loop(const PairLoop& loop) {
  EdgeSet edges(loop_edges(loop));
  LoopSubdivision sub;
  for (const P& s : side_samples(edges)) {
    sub.samples.push_back(s);
    sub.face_windings.push_back(winding_edges(edges, s));
  }
  // unbounded face must carry winding 0
  P far = loop.pts[0];
  for (const auto& v : loop.pts) {
    far.x = std::min(far.x, v.x);
    far.y = std::min(far.y, v.y);
  }
  far.x -= 1;
  far.y -= 1;
  if (winding_edges(edges, far) != 0)
    fail_internal("unbounded face has nonzero winding");

  size_t n = loop.pts.size();
  auto corner_sectors = [&](size_t c) {
    P in = loop.pts[c] - loop.pts[(c + n - 1) % n];
    P out = loop.pts[(c + 1) % n] - loop.pts[c];
    P r1 = out;                 // outgoing ray
    P r2{-in.x, -in.y};         // incoming edge reversed
    std::array<int, 2> vals;
    P w0 = sector_bisector(r1, r2);
    P w1 = sector_bisector(r2, r1);
    int k = 0;
    for (const P& w : {w0, w1}) {
      Rat t = min_ray_hit(edges, loop.pts[c], w);
      Rat step = (t == 0) ? Rat(1) : t / 2;
      P s{loop.pts[c].x + step * w.x, loop.pts[c].y + step * w.y};
      vals[k++] = winding_edges(edges, s);
    }
    return vals;
  };
  sub.sectors_p = corner_sectors(loop.corner_p);
  sub.sectors_q = corner_sectors(loop.corner_q);
  return sub;
}

// ---- Maslov index ---------------------------------------------------------

namespace {

struct Move {
  P u, v;
  int dir;  // +1 ccw, -1 cw; swept angle in (0, pi)
};

std::vector<Move> loop_moves(const PairLoop& loop) {
  size_t n = loop.pts.size();
  std::vector<Move> moves;
  for (size_t i = 0; i < n; ++i) {
    P a = loop.pts[i] - loop.pts[(i + n - 1) % n];
    P b = loop.pts[(i + 1) % n] - loop.pts[i];
    Rat c = cross(a, b);
    if (i == loop.corner_q) {
      // corner convention: +90-degree flip — positive representative mod pi
      if (c == 0) fail_internal("non-transverse corner at q");
      if (c > 0) moves.push_back({a, b, +1});
      else moves.push_back({a, {-b.x, -b.y}, +1});
    } else if (i == loop.corner_p) {
      // -90-degree flip — negative representative mod pi
      if (c == 0) fail_internal("non-transverse corner at p");
      if (c < 0) moves.push_back({a, b, -1});
      else moves.push_back({a, {-b.x, -b.y}, -1});
    } else {
      if (c > 0) moves.push_back({a, b, +1});
      else if (c < 0) moves.push_back({a, b, -1});
      else if (dot(a, b) < 0)
        fail_internal("loop reverses direction at an interior vertex");
      // collinear forward: no turning
    }
  }
  return moves;
}

int count_line_crossings(const std::vector<Move>& moves, const P& ref) {
  int total = 0;
  for (const auto& m : moves) {
    for (const P& w : {ref, P{-ref.x, -ref.y}}) {
      bool inside = m.dir > 0 ? (cross(m.u, w) > 0 && cross(w, m.v) > 0)
                              : (cross(m.u, w) < 0 && cross(w, m.v) < 0);
      if (inside) total += m.dir;
    }
  }
  return total;
}

}  // namespace

int maslov_rel(const TangleDiagram& d, const std::string& p,
               const std::string& q) {
  if (p == q) return 0;
  PairLoop loop = pair_loop(d, p, q);
  auto moves = loop_moves(loop);
  // two generic reference directions, not parallel to any move endpoint
  std::vector<P> refs;
  for (long k = 0; refs.size() < 2; ++k) {
    P cand = (k == 0) ? P{Rat(0), Rat(1)} : P{Rat(1), Rat(k - 1)};
    bool ok = true;
    for (const auto& m : moves)
      if (cross(cand, m.u) == 0 || cross(cand, m.v) == 0) ok = false;
    if (ok) refs.push_back(cand);
    if (k > (long)moves.size() * 2 + 8) fail_internal("no generic reference direction");
  }
  int mu1 = count_line_crossings(moves, refs[0]);
  int mu2 = count_line_crossings(moves, refs[1]);
  if (mu1 != mu2)
    fail_internal("Maslov turning failed integrality certification");
  return mu1;
}

namespace {

// Geometry fingerprint for the Maslov memo: the index depends only on the
// diagram's polylines and the point's position, so a content hash is a safe
// cache key (collisions would need two diagrams with identical double
// shadows; a miss merely recomputes).
uint64_t diagram_fingerprint(const TangleDiagram& d) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    h ^= bits;
    h *= 1099511628211ull;
  };
  for (const auto* arc : {&d.unstable, &d.stable})
    for (int b : {+1, -1})
      for (const auto& v : arc->branch(b)) {
        mix(v.x.get_d());
        mix(v.y.get_d());
      }
  return h;
}

}  // namespace

int maslov_abs(const TangleDiagram& d, const std::string& p) {
  const HomoclinicPoint& fx = d.fixed();
  if (p == fx.id) return 0;
  thread_local std::map<std::pair<uint64_t, std::string>, int> memo;
  uint64_t fp = diagram_fingerprint(d);
  auto key = std::make_pair(fp, p);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  int mu = maslov_rel(d, p, fx.id);
  memo.emplace(key, mu);
  return mu;
}

std::map<std::string, int> maslov_table(const TangleDiagram& d) {
  std::map<std::string, int> out;
  for (const auto& pt : d.points) out[pt.id] = maslov_abs(d, pt.id);
  return out;
}

// ---- lunes ----------------------------------------------------------------

LuneWitness lune_witness(const TangleDiagram& d, const std::string& p,
                         const std::string& q) {
  thread_local std::map<std::tuple<uint64_t, std::string, std::string>,
                        LuneWitness> memo;
  auto key = std::make_tuple(diagram_fingerprint(d), p, q);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  PairLoop loop = pair_loop(d, p, q);
  LoopSubdivision sub = subdivide_loop(loop);
  auto admissible = [&](int sigma) {
    for (int w : sub.face_windings)
      if (sigma * w < 0) return false;
    auto corner_ok = [sigma](const std::array<int, 2>& s) {
      int a = sigma * s[0], b = sigma * s[1];
      return (a == 0 && b == 1) || (a == 1 && b == 0);
    };
    return corner_ok(sub.sectors_p) && corner_ok(sub.sectors_q);
  };
  LuneWitness w;
  if (admissible(+1)) {
    w.exists = true;
    w.traversal = +1;
  } else if (admissible(-1)) {
    w.exists = true;
    w.traversal = -1;
  }
  memo.emplace(key, w);
  return w;
}

bool lune_exists(const TangleDiagram& d, const std::string& p,
                 const std::string& q) {
  if (maslov_abs(d, p) - maslov_abs(d, q) != 1)
    fail_input("lune_exists requires Maslov gap 1 between " + p + " and " + q);
  return lune_witness(d, p, q).exists;
}

int sign_n(const TangleDiagram& d, const std::string& p, const std::string& q,
           char orient, Coeff mode) {
  if (maslov_abs(d, p) - maslov_abs(d, q) != 1)
    fail_input("sign requires Maslov gap 1 between " + p + " and " + q);
  LuneWitness w = lune_witness(d, p, q);
  if (!w.exists) return 0;
  if (mode == Coeff::Z2) return 1;
  const HomoclinicPoint& P1 = d.point(p);
  const HomoclinicPoint& Q1 = d.point(q);
  // o_pq: direction of [p,q]_u from p to q, compared with o_u
  int dir_pq = (Q1.u.signed_offset() > P1.u.signed_offset()) ? +1 : -1;
  int o_u = (orient == '+') ? +1 : -1;
  return dir_pq == o_u ? +1 : -1;
}

// ---- hearts ---------------------------------------------------------------

namespace {

// Shadow of a glued heart through middle point m: sum of the two lune winding
// functions, each taken with the traversal that made it nonnegative.
struct Shadow {
  PairLoop l1, l2;
  int s1 = 0, s2 = 0;
  int eval(const EdgeSet& e1, const EdgeSet& e2, const P& z) const {
    return s1 * winding_edges(e1, z) + s2 * winding_edges(e2, z);
  }
};

bool shadows_equal(const Shadow& A, const Shadow& B) {
  std::vector<Edge> all;
  EdgeSet ea1(loop_edges(A.l1)), ea2(loop_edges(A.l2));
  EdgeSet eb1(loop_edges(B.l1)), eb2(loop_edges(B.l2));
  for (const auto* es : {&ea1, &ea2, &eb1, &eb2})
    all.insert(all.end(), es->ex.begin(), es->ex.end());
  EdgeSet joint(std::move(all));
  for (const P& z : side_samples(joint)) {
    if (A.eval(ea1, ea2, z) != B.eval(eb1, eb2, z)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<std::string>> heart_middle_classes(
    const TangleDiagram& d, const std::string& p, const std::string& r) {
  int mu_p = maslov_abs(d, p), mu_r = maslov_abs(d, r);
  if (mu_p - mu_r != 2)
    fail_input("heart factorization requires Maslov gap 2");
  std::vector<std::string> middles;
  std::vector<Shadow> shadows;
  for (const auto& m : d.points) {
    if (m.id == p || m.id == r || m.is_fixed_point) continue;
    if (maslov_abs(d, m.id) != mu_p - 1) continue;
    LuneWitness w1 = lune_witness(d, p, m.id);
    if (!w1.exists) continue;
    LuneWitness w2 = lune_witness(d, m.id, r);
    if (!w2.exists) continue;
    Shadow sh;
    sh.l1 = pair_loop(d, p, m.id);
    sh.l2 = pair_loop(d, m.id, r);
    sh.s1 = w1.traversal;
    sh.s2 = w2.traversal;
    middles.push_back(m.id);
    shadows.push_back(sh);
  }
  std::vector<std::vector<std::string>> classes;
  std::vector<int> cls(middles.size(), -1);
  for (size_t i = 0; i < middles.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = (int)classes.size();
    classes.push_back({middles[i]});
    for (size_t j = i + 1; j < middles.size(); ++j) {
      if (cls[j] < 0 && shadows_equal(shadows[i], shadows[j])) {
        cls[j] = cls[i];
        classes.back().push_back(middles[j]);
      }
    }
  }
  return classes;
}

std::vector<std::pair<std::string, std::string>> heart_factorizations(
    const TangleDiagram& d, const std::string& p, const std::string& r) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : heart_middle_classes(d, p, r)) {
    if (c.size() == 1)
      fail_window("cutting partner of " + c[0] + " for (" + p + "," + r +
                  ") lies outside the window");
    if (c.size() > 2)
      fail_internal("ambiguous cutting-partner pairing for (" + p + "," + r + ")");
    out.push_back({c[0], c[1]});
  }
  return out;
}

// ---- classification -------------------------------------------------------

std::map<std::string, PointClass> classify_points(const TangleDiagram& d) {
  std::map<std::string, PointClass> out;
  const HomoclinicPoint& fx = d.fixed();
  for (const auto& pt : d.points) {
    if (pt.is_fixed_point) continue;  // x excluded from classification
    PointClass pc;
    auto up = segment(d.unstable, pt.u, fx.u);
    auto sp = segment(d.stable, pt.s, fx.s);
    std::vector<DEdge> dup, dsp;
    for (size_t i = 0; i + 1 < up.size(); ++i) dup.push_back(shadow_of({up[i], up[i + 1]}));
    for (size_t j = 0; j + 1 < sp.size(); ++j) dsp.push_back(shadow_of({sp[j], sp[j + 1]}));
    bool crossing = false;
    for (size_t i = 0; i + 1 < up.size() && !crossing; ++i) {
      for (size_t j = 0; j + 1 < sp.size() && !crossing; ++j) {
        const DEdge &da = dup[i], &db = dsp[j];
        if (std::min(da.ax, da.bx) > std::max(db.ax, db.bx) + kEps ||
            std::min(db.ax, db.bx) > std::max(da.ax, da.bx) + kEps ||
            std::min(da.ay, da.by) > std::max(db.ay, db.by) + kEps ||
            std::min(db.ay, db.by) > std::max(da.ay, da.by) + kEps)
          continue;
        Edge eu{up[i], up[i + 1]}, es{sp[j], sp[j + 1]};
        P r = eu.b - eu.a, q = es.b - es.a;
        Rat den = cross(r, q);
        if (den == 0) continue;
        Rat t = cross(es.a - eu.a, q) / den;
        Rat s = cross(es.a - eu.a, r) / den;
        if (t < 0 || t > 1 || s < 0 || s > 1) continue;
        P z{eu.a.x + t * r.x, eu.a.y + t * r.y};
        if (z == pt.pos || z == fx.pos) continue;  // shared endpoints
        crossing = true;
      }
    }
    // In the plane every crossing of the two manifolds is a (contractible)
    // homoclinic point, so the two flags coincide.
    pc.semiprimary = !crossing;
    pc.primary = !crossing;
    out[pt.id] = pc;
  }
  return out;
}

}  // namespace hft
