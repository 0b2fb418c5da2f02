#include "hft/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hft {

namespace {

RationalPoint forward(const Rat& a, const RationalPoint& p) {
  return {p.y, -p.x + a * p.y - p.y * p.y};
}

RationalPoint backward(const Rat& a, const RationalPoint& p) {
  return {a * p.x - p.x * p.x - p.y, p.x};
}

struct DPoint {
  double x, y;
};

DPoint dforward(double a, DPoint p) {
  return {p.y, -p.x + a * p.y - p.y * p.y};
}

}  // namespace

MapSpec henon_spec(const Rat& a) {
  MapSpec s;
  s.family = MapFamily::HenonAreaPreserving;
  s.a = a;
  s.fixed_point = {0, 0};
  s.linearization = {Rat(0), Rat(1), Rat(-1), a};
  // Verified, not assumed: fixed point, unit Jacobian determinant,
  // hyperbolicity (|trace| > 2 for a real 2x2 with det 1).
  if (!(forward(a, s.fixed_point) == s.fixed_point))
    fail_internal("built-in map does not fix the origin");
  Rat det = s.linearization[0] * s.linearization[3] -
            s.linearization[1] * s.linearization[2];
  if (det != 1) fail_internal("built-in map is not area preserving");
  if (abs(a) <= 2)
    fail_input("map parameter " + rat_str(a) +
               " is not hyperbolic at the origin (need |a| > 2)");
  // Eigenvalues (a +- sqrt(a^2-4))/2: both positive iff a > 2, both negative
  // iff a < -2; negative eigenvalues flip the branches of W under the map.
  s.w_orientation_preserving = (a > 2);
  return s;
}

RationalPoint apply_map(const MapSpec& spec, const RationalPoint& p, long n) {
  if (spec.family != MapFamily::HenonAreaPreserving)
    fail_input("exact evaluation is only available for the built-in family");
  RationalPoint q = p;
  for (long i = 0; i < n; ++i) q = forward(spec.a, q);
  for (long i = 0; i > n; --i) q = backward(spec.a, q);
  return q;
}

namespace {

// One unstable branch, grown in double precision as the image of a local
// fundamental domain. A parameter tau >= delta addresses the point
// phi^k(tau/lambda^k * v) with k chosen so the seed argument stays in
// [delta, lambda*delta).
struct Grower {
  double a, lam, delta;
  DPoint v;  // unit unstable eigenvector times branch sign

  DPoint at(double tau) const {
    int k = (int)std::floor(std::log(tau / delta) / std::log(lam) + 1e-12);
    if (k < 0) k = 0;
    double t = tau / std::pow(lam, k);
    DPoint p{t * v.x, t * v.y};
    for (int i = 0; i < k; ++i) p = dforward(a, p);
    return p;
  }
};

double dist(DPoint p, DPoint q) { return std::hypot(p.x - q.x, p.y - q.y); }

bool in_window(DPoint p, double w) {
  return std::fabs(p.x) <= w && std::fabs(p.y) <= w;
}

// cos of turning angle at b
double turn_cos(DPoint a, DPoint b, DPoint c) {
  double ux = b.x - a.x, uy = b.y - a.y, vx = c.x - b.x, vy = c.y - b.y;
  double nu = std::hypot(ux, uy), nv = std::hypot(vx, vy);
  if (nu == 0 || nv == 0) return 1.0;
  return (ux * vx + uy * vy) / (nu * nv);
}

std::vector<DPoint> grow_branch(const Grower& g, const GrowthParams& par,
                                int dir_unused) {
  (void)dir_unused;
  std::vector<double> taus;
  std::vector<DPoint> pts;
  // initial geometric ladder over successive fundamental domains
  const int per_domain = 16;
  double arc = 0;
  for (int step = 0;; ++step) {
    double tau = par.delta * std::pow(g.lam, step / (double)per_domain);
    DPoint p = g.at(tau);
    if (!taus.empty()) arc += dist(pts.back(), p);
    taus.push_back(tau);
    pts.push_back(p);
    if (!in_window(p, par.window)) break;
    if (arc > par.max_arc_length) break;
    if (pts.size() >= par.max_points) break;
  }
  // adaptive refinement: insert parameter midpoints (geometric means) until
  // spacing and turning bounds hold; existing vertices never move
  double cos_bound = std::cos(par.max_turn_deg * M_PI / 180.0);
  bool changed = true;
  while (changed && pts.size() < par.max_points) {
    changed = false;
    std::vector<char> split(taus.size() - 1, 0);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      bool inside = in_window(pts[i], par.window) ||
                    in_window(pts[i + 1], par.window);
      if (!inside) continue;
      if (dist(pts[i], pts[i + 1]) > par.max_step) split[i] = 1;
    }
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
      if (!in_window(pts[i], par.window)) continue;
      if (turn_cos(pts[i - 1], pts[i], pts[i + 1]) < cos_bound)
        split[i - 1] = split[i] = 1;
    }
    std::vector<double> nt;
    std::vector<DPoint> np;
    for (size_t i = 0; i < taus.size(); ++i) {
      nt.push_back(taus[i]);
      np.push_back(pts[i]);
      if (i + 1 < taus.size() && split[i] && np.size() < par.max_points &&
          taus[i + 1] / taus[i] > 1.0 + 1e-12) {
        double mid = std::sqrt(taus[i] * taus[i + 1]);
        nt.push_back(mid);
        np.push_back(g.at(mid));
        changed = true;
      }
    }
    taus.swap(nt);
    pts.swap(np);
  }
  // truncate at the first vertex outside the window
  size_t cut = pts.size();
  for (size_t i = 0; i < pts.size(); ++i)
    if (!in_window(pts[i], par.window)) {
      cut = i + 1;
      break;
    }
  pts.resize(cut);
  return pts;
}

Rat snap_coord(double v, int bits) {
  double scaled = std::round(std::ldexp(v, bits));
  Rat r(Int(scaled), Int(1) << bits);
  r.canonicalize();
  return r;
}

}  // namespace

TangleDiagram grow_tangle(const MapSpec& spec, const GrowthParams& par) {
  if (spec.family != MapFamily::HenonAreaPreserving)
    fail_input("growth is only implemented for the built-in family");
  if (par.delta <= 0 || par.max_arc_length <= 0 || par.max_points < 4 ||
      par.max_turn_deg <= 0 || par.max_turn_deg >= 90 || par.max_step <= 0 ||
      par.snap_bits < 4 || par.window <= 0)
    fail_input("invalid growth parameters");

  double a = spec.a.get_d();
  double lam = (a + std::sqrt(a * a - 4)) / 2;  // unstable eigenvalue, a > 2
  double nv = std::hypot(1.0, lam);
  DPoint vu{1 / nv, lam / nv};

  TangleDiagram d;
  d.name = "grown";
  d.fixed_point = {0, 0};
  d.unstable.kind = ManifoldKind::Unstable;
  d.stable.kind = ManifoldKind::Stable;

  auto build = [&](int dir) {
    Grower g{a, lam, par.delta, {dir * vu.x, dir * vu.y}};
    auto pts = grow_branch(g, par, dir);
    std::vector<RationalPoint> poly;
    poly.push_back({0, 0});
    for (const auto& p : pts) {
      RationalPoint rp{snap_coord(p.x, par.snap_bits),
                       snap_coord(p.y, par.snap_bits)};
      if (!(poly.back() == rp)) poly.push_back(rp);
    }
    if (poly.size() < 2) fail_window("branch growth produced no segment");
    return poly;
  };

  d.unstable.branch_pos = build(+1);
  d.unstable.branch_neg = build(-1);
  // The family is reversible: conjugating by the coordinate swap inverts the
  // map, so the stable manifold is the exact mirror of the unstable one.
  auto mirror = [](const std::vector<RationalPoint>& poly) {
    std::vector<RationalPoint> out;
    for (const auto& p : poly) out.push_back({p.y, p.x});
    return out;
  };
  d.stable.branch_pos = mirror(d.unstable.branch_pos);
  d.stable.branch_neg = mirror(d.unstable.branch_neg);

  {
    std::ostringstream meta;
    meta << "{\"generator\":\"henon_area_preserving\",\"a\":\"" << rat_str(spec.a)
         << "\",\"delta\":" << par.delta << ",\"max_arc_length\":" << par.max_arc_length
         << ",\"max_points\":" << par.max_points << ",\"max_turn_deg\":" << par.max_turn_deg
         << ",\"max_step\":" << par.max_step << ",\"snap_bits\":" << par.snap_bits
         << ",\"window\":" << par.window << "}";
    d.metadata_json = meta.str();
  }

  d.points = compute_intersections(d);
  ValidationReport rep = validate_tangle(d);
  if (!rep.ok) {
    std::string msg = "snapped diagram failed validation";
    for (const auto& e : rep.errors) msg += "; " + e;
    fail_window(msg);
  }
  if (d.points.size() < 2)
    fail_window("growth budget exhausted before any intersection was found");
  return d;
}

}  // namespace hft
