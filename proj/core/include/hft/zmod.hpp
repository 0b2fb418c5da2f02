#pragma once

#include <string>
#include <vector>

#include "hft/geometry.hpp"  // for Coeff
#include "hft/rational.hpp"

namespace hft {

struct IMat {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IMat() = default;
  IMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
  Int& operator()(size_t r, size_t c) { return a[r * cols + c]; }
  const Int& operator()(size_t r, size_t c) const { return a[r * cols + c]; }
  static IMat identity(size_t n);
  IMat operator*(const IMat& o) const;
  bool operator==(const IMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool is_zero() const;
};

// U * A * V = D with U, V unimodular and D in Smith normal form
// (diagonal, nonnegative, divisibility chain d1 | d2 | ...).
struct SmithNF {
  IMat U, D, V, Uinv, Vinv;
};

SmithNF smith_normal_form(const IMat& A);

// Nonzero diagonal entries of the Smith form.
std::vector<Int> invariant_factors(const IMat& A);

struct FgAbelianGroup {
  Coeff mode = Coeff::Z;
  unsigned free_rank = 0;
  std::vector<Int> torsion;  // d1 | d2 | ..., each >= 2; empty in Z2 mode

  bool operator==(const FgAbelianGroup& o) const {
    return mode == o.mode && free_rank == o.free_rank && torsion == o.torsion;
  }
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;
};

// Z^gens / column span of rel (entries mod 2 in Z2 mode, giving F2^gens / span).
FgAbelianGroup group_of_presentation(size_t gens, const IMat& rel, Coeff mode);

// Homology of a pair: ker A / im B, where A is (m x n), B is (n x p) and
// A*B = 0. Pass an (0 x n) A for a plain presentation quotient Z^n / im B.
// Keeps enough basis data to push chain-level maps to homology.
class HomologyData {
public:
  HomologyData() = default;
  HomologyData(const IMat& A, const IMat& B, Coeff mode);

  const FgAbelianGroup& group() const { return group_; }
  size_t chain_dim() const { return n_; }

  // Canonical coordinates of the class of cycle c (length-n vector, must be
  // in ker A): torsion coordinates reduced to [0, d_i), then free ones.
  std::vector<Int> coords(const std::vector<Int>& c) const;
  bool is_zero_class(const std::vector<Int>& c) const;

  // Cycle representatives of the canonical generators (torsion first).
  std::vector<std::vector<Int>> generator_reps() const;

  // Orders of the canonical generators: torsion d_i, then 0 for free ones.
  std::vector<Int> generator_orders() const;

private:
  Coeff mode_ = Coeff::Z;
  size_t n_ = 0;
  FgAbelianGroup group_;
  // Z mode
  SmithNF snfA_, snfX_;
  std::vector<size_t> keridx_;
  std::vector<Int> orders_all_;  // per kernel coordinate: 0 free, 1 killed, d>=2
  // Z2 mode
  IMat K2_;                      // kernel basis, n x k, entries 0/1
  IMat X2_;                      // im B in kernel coordinates (echelonized)
  std::vector<long> pivot_row_;  // pivot row of each echelon column; -1 none
  std::vector<bool> row_is_pivot_;
};

FgAbelianGroup homology_of_pair(const IMat& A, const IMat& B, Coeff mode);

struct GroupMorphism {
  FgAbelianGroup source, target;
  IMat matrix;  // target generators x source generators (canonical bases)
  bool operator==(const GroupMorphism& o) const {
    return source == o.source && target == o.target && matrix == o.matrix;
  }
};

// Push the chain-level map f (n' x n, mapping ker A into ker A' and im B into
// im B') down to canonical homology generators. Verifies relation
// compatibility and order preservation.
GroupMorphism induced_quotient_map(const IMat& f, const HomologyData& src,
                                   const HomologyData& dst);

GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f);

}  // namespace hft
