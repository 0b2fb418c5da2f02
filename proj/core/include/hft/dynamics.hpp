#pragma once

#include <array>
#include <string>
#include <vector>

#include "hft/tangle.hpp"

namespace hft {

enum class MapFamily { HenonAreaPreserving, UserPolynomial };

// Planar area-preserving map with a hyperbolic fixed point. The built-in
// family is phi(x, y) = (y, -x + a*y - y^2), exactly invertible:
// phi^{-1}(x, y) = (a*x - x^2 - y, x).
struct MapSpec {
  MapFamily family = MapFamily::HenonAreaPreserving;
  Rat a = 3;                       // family parameter
  RationalPoint fixed_point{0, 0};
  std::array<Rat, 4> linearization{0, 0, 0, 0};  // row-major d(phi) at x
  bool w_orientation_preserving = true;
};

// Builds and validates the built-in spec: checks the fixed point, unit
// Jacobian determinant, and hyperbolicity (|trace| > 2) instead of assuming
// them. Fails (input) otherwise.
MapSpec henon_spec(const Rat& a = 3);

// n-fold forward image (|n|-fold inverse image for n < 0), exact.
RationalPoint apply_map(const MapSpec& spec, const RationalPoint& p, long n);

struct GrowthParams {
  double delta = 1e-6;          // initial local-segment length at x
  double max_arc_length = 6;   // growth budget per branch
  size_t max_points = 20000;    // vertex budget per branch
  double max_turn_deg = 2;      // per-vertex turning bound for refinement
  double max_step = 0.02;       // per-edge spacing bound for refinement
  int snap_bits = 40;           // vertices snapped to 2^-snap_bits grid
  double window = 2.2;          // clip box |x|,|y| <= window
};

// Grows the unstable branches by fundamental-domain iteration with
// turning-bounded adaptive refinement; the stable branches are the exact
// swap-mirror images (the built-in family is reversible under (x,y)->(y,x)).
// Vertices are snapped to the dyadic grid, the diagram re-validated, and all
// intersections recomputed exactly on the snapped polylines (ids "h0", ...).
TangleDiagram grow_tangle(const MapSpec& spec, const GrowthParams& params);

// Hand-constructed exact polyline diagrams reproducing the reference
// combinatorics. Names: fig3a, fig3b_left, fig3b_right, fig4, fig5,
// fig6a, fig6b, cascade. Point ids carry the conventional labels
// (p, q, q_a, ...).
TangleDiagram builtin_example(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace hft
