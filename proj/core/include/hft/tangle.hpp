#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hft/rational.hpp"

namespace hft {

// Position along one invariant manifold: branch sign and a nonnegative offset
// measured from the fixed point. Offsets are "segment index + fraction" along
// the branch polyline, which is monotone in arc position and good enough for
// the total order; no metric meaning is attached.
struct ManifoldParam {
  int branch = +1;  // +1 = positive branch, -1 = negative branch
  Rat offset = 0;   // >= 0, 0 exactly at the fixed point

  // Signed coordinate realizing the total order
  // (-,a) < (-,b) iff a > b;  (-,a) < (+,b);  (+,a) < (+,b) iff a < b.
  Rat signed_offset() const { return branch > 0 ? offset : Rat(-offset); }
  bool operator<(const ManifoldParam& o) const {
    return signed_offset() < o.signed_offset();
  }
  bool operator==(const ManifoldParam& o) const {
    return signed_offset() == o.signed_offset();
  }
};

struct HomoclinicPoint {
  std::string id;
  RationalPoint pos;
  ManifoldParam u;  // position on the unstable manifold
  ManifoldParam s;  // position on the stable manifold
  int crossing_sign = 0;  // sign of det(du, ds), du/ds in +param direction
  bool is_fixed_point = false;
};

enum class ManifoldKind { Unstable, Stable };

// One immersed manifold window: two branch polylines, both starting at the
// fixed point. `orient` picks the reference orientation: '+' means direction
// of increasing ManifoldParam.
struct ManifoldArc {
  ManifoldKind kind = ManifoldKind::Unstable;
  std::vector<RationalPoint> branch_pos;  // branch_pos[0] == fixed point
  std::vector<RationalPoint> branch_neg;  // branch_neg[0] == fixed point
  char orient = '+';

  const std::vector<RationalPoint>& branch(int b) const {
    return b > 0 ? branch_pos : branch_neg;
  }
  // Point at a given param; fails (window) if beyond the stored polyline.
  RationalPoint at(const ManifoldParam& p) const;
  Rat max_offset(int b) const;
};

struct TangleDiagram {
  std::string name;
  RationalPoint fixed_point;
  ManifoldArc unstable;
  ManifoldArc stable;
  std::vector<HomoclinicPoint> points;  // includes the fixed point record
  std::string metadata_json = "{}";

  const HomoclinicPoint& point(const std::string& id) const;
  const HomoclinicPoint* find(const std::string& id) const;
  const HomoclinicPoint& fixed() const;
};

struct ValidationReport {
  bool ok = true;
  bool strongly_intersecting = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

// Well-formedness: simple arcs, branches anchored at the fixed point,
// transversality (at the fixed point and at every listed crossing), params
// consistent with positions, every geometric crossing accounted for.
// Strong-intersection failure is a warning, not an error.
ValidationReport validate_tangle(const TangleDiagram& d);

// Polyline of the manifold segment from param a to param b (traversed a -> b,
// through the fixed point when the params sit on different branches).
// Endpoints are included as first/last vertices.
std::vector<RationalPoint> segment(const ManifoldArc& arc,
                                   const ManifoldParam& a,
                                   const ManifoldParam& b);

// Diagram points strictly between p and q along the given manifold,
// ordered by traversal from p to q. Excludes endpoints; includes the fixed
// point if it lies strictly between.
std::vector<std::string> points_between(const TangleDiagram& d,
                                        const std::string& p,
                                        const std::string& q,
                                        ManifoldKind which);

// Recomputes all transverse intersections of the two arcs from the raw
// polylines and returns them as fresh point records (ids "h0", "h1", ... in
// unstable-param order; the fixed point record is named "x"). The listed
// points of `d` are not consulted.
std::vector<HomoclinicPoint> compute_intersections(const TangleDiagram& d);

// JSON (de)serialization of the on-disk tangle format.
TangleDiagram parse_tangle_json(const std::string& text);
std::string tangle_to_json(const TangleDiagram& d);

}  // namespace hft
