#pragma once

#include <array>
#include <map>
#include <vector>

#include "hft/tangle.hpp"

namespace hft {

enum class Coeff { Z, Z2 };

// Closed loop [p,q]_u * [q,p]_s with the two corner vertex indices.
// Vertices are listed once; the closing edge back to pts[0] is implicit.
struct PairLoop {
  std::vector<RationalPoint> pts;
  size_t corner_p = 0;  // always 0 by construction
  size_t corner_q = 0;
};

PairLoop pair_loop(const TangleDiagram& d, const std::string& p,
                   const std::string& q);

// Sampled description of the planar subdivision the loop induces: one sample
// point (and its winding number) on each side of every sub-edge, plus the two
// corner sector values at p and q. Every face of the subdivision is adjacent
// to some sub-edge, so `face_windings` hits every face.
struct LoopSubdivision {
  std::vector<int> face_windings;        // one entry per side sample
  std::vector<RationalPoint> samples;    // matching sample points (debug dump)
  std::array<int, 2> sectors_p{0, 0};
  std::array<int, 2> sectors_q{0, 0};
};

LoopSubdivision subdivide_loop(const PairLoop& loop);

// Winding number of the (closed) loop around z; z must avoid the loop.
int winding_number(const PairLoop& loop, const RationalPoint& z);

// Maslov index of the pair loop: twice the tangent winding number with the
// +90/-90 corner convention at q/p. Exact; certified with two reference
// directions.
int maslov_rel(const TangleDiagram& d, const std::string& p,
               const std::string& q);
int maslov_abs(const TangleDiagram& d, const std::string& p);
std::map<std::string, int> maslov_table(const TangleDiagram& d);

// Immersed-di-gon existence from p to q (winding criterion). Precondition
// mu(p) - mu(q) = 1 is enforced.
bool lune_exists(const TangleDiagram& d, const std::string& p,
                 const std::string& q);

// Same criterion without the Maslov precondition, also reporting the
// traversal sign under which the criterion held (+1 = as-built orientation).
// Used internally and by the heart machinery.
struct LuneWitness {
  bool exists = false;
  int traversal = 0;  // +1 or -1 when exists
};
LuneWitness lune_witness(const TangleDiagram& d, const std::string& p,
                         const std::string& q);

// n(p,q) per the sign formula; orient is '+' (o_u = increasing u-param) or
// '-'. In Z2 mode returns |n| mod 2.
int sign_n(const TangleDiagram& d, const std::string& p, const std::string& q,
           char orient, Coeff mode = Coeff::Z);

// Middle points q with lunes p -> q -> r, grouped into cutting-partner
// classes by glued-shadow identity. Lenient: classes may have any size.
std::vector<std::vector<std::string>> heart_middle_classes(
    const TangleDiagram& d, const std::string& p, const std::string& r);

// Strict operation: every class must have exactly two members.
std::vector<std::pair<std::string, std::string>> heart_factorizations(
    const TangleDiagram& d, const std::string& p, const std::string& r);

struct PointClass {
  bool primary = false;
  bool semiprimary = false;
  bool classifiable = true;
};
std::map<std::string, PointClass> classify_points(const TangleDiagram& d);

// W-orientation detection for generated maps lives in dynamics; fixtures are
// treated as W-orientation preserving (encoded as such).

}  // namespace hft
