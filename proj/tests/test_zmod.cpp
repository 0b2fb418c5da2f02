#include <doctest.h>
#include <hft/zmod.hpp>

#include <random>

#include "oracles.hpp"

using namespace hft;

namespace {

bool is_snf_shape(const IMat& D) {
  Int prev = 0;
  bool seen_zero = false;
  for (size_t r = 0; r < D.rows; r++)
    for (size_t c = 0; c < D.cols; c++) {
      if (r != c) {
        if (D(r, c) != 0) return false;
        continue;
      }
      const Int& d = D(r, r);
      if (d < 0) return false;
      if (d == 0) {
        seen_zero = true;
      } else {
        if (seen_zero) return false;
        if (prev != 0 && d % prev != 0) return false;
        prev = d;
      }
    }
  return true;
}

}  // namespace

TEST_CASE("Smith normal form: factorization, unimodularity, shape, oracle") {
  std::mt19937 rng(999);
  std::uniform_int_distribution<size_t> dim(0, 6);
  for (int iter = 0; iter < 300; iter++) {
    IMat A = oracle::random_matrix(rng, dim(rng), dim(rng), 3);
    auto snf = smith_normal_form(A);
    CHECK(is_snf_shape(snf.D));
    CHECK(snf.U * A * snf.V == snf.D);
    CHECK(snf.U * snf.Uinv == IMat::identity(A.rows));
    CHECK(snf.Uinv * snf.U == IMat::identity(A.rows));
    CHECK(snf.V * snf.Vinv == IMat::identity(A.cols));
    Int du = oracle::det(snf.U);
    CHECK((du == 1 || du == -1));
    Int dv = oracle::det(snf.V);
    CHECK((dv == 1 || dv == -1));
    CHECK(invariant_factors(A) == oracle::invariant_factors(A));
  }
}

TEST_CASE("group presentations match the minors-gcd oracle") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<size_t> dim(0, 5);
  for (int iter = 0; iter < 200; iter++) {
    size_t n = dim(rng), m = dim(rng);
    IMat rel = oracle::random_matrix(rng, n, m, 3);
    FgAbelianGroup g = group_of_presentation(n, rel, Coeff::Z);
    FgAbelianGroup o = oracle::group_of(n, rel);
    CHECK(g.free_rank == o.free_rank);
    CHECK(g.torsion == o.torsion);
  }
}

TEST_CASE("homology of a pair matches the oracle on random chain pairs") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<size_t> dim(1, 5);
  std::uniform_int_distribution<int> coef(-2, 2);
  int done = 0;
  while (done < 150) {
    size_t m = dim(rng), n = dim(rng);
    IMat A = oracle::random_matrix(rng, m, n, 2);
    auto K = oracle::kernel_basis(A);
    size_t k = K.size();
    // B: random integer combinations of the kernel basis, so A*B = 0
    size_t p = dim(rng);
    IMat X(k, p), B(n, p);
    for (size_t c = 0; c < p; c++)
      for (size_t i = 0; i < k; i++) {
        X(i, c) = coef(rng);
        for (size_t r = 0; r < n; r++) B(r, c) += X(i, c) * K[i][r];
      }
    REQUIRE((A * B).is_zero());
    FgAbelianGroup g = homology_of_pair(A, B, Coeff::Z);
    FgAbelianGroup o = oracle::group_of(k, X);
    CHECK(g.free_rank == o.free_rank);
    CHECK(g.torsion == o.torsion);
    done++;
  }
}

TEST_CASE("homology data: classes, representatives, orders") {
  // 0 -> Z^2 --B--> Z^2 with B = [[2,0],[0,3]]: H = Z/2 + Z/3 = Z/6
  IMat A(0, 2);
  IMat B(2, 2);
  B(0, 0) = 2;
  B(1, 1) = 3;
  HomologyData h(A, B, Coeff::Z);
  CHECK(h.group().free_rank == 0);
  REQUIRE(h.group().torsion.size() == 1);
  CHECK(h.group().torsion[0] == 6);
  CHECK(h.is_zero_class({2, 3}));
  CHECK_FALSE(h.is_zero_class({1, 0}));
  auto reps = h.generator_reps();
  REQUIRE(reps.size() == 1);
  CHECK_FALSE(h.is_zero_class(reps[0]));
  auto ord = h.generator_orders();
  REQUIRE(ord.size() == 1);
  CHECK(ord[0] == 6);
}

TEST_CASE("mod-2 presentations") {
  IMat rel(2, 1);
  rel(0, 0) = 2;  // even relation dies mod 2
  rel(1, 0) = 3;
  FgAbelianGroup g = group_of_presentation(2, rel, Coeff::Z2);
  CHECK(g.mode == Coeff::Z2);
  CHECK(g.free_rank == 1);
  CHECK(g.torsion.empty());
}

TEST_CASE("induced quotient maps compose and respect identities") {
  IMat A(0, 3);
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 50; iter++) {
    IMat B = oracle::random_matrix(rng, 3, 2, 2);
    HomologyData h(A, B, Coeff::Z);
    GroupMorphism id = induced_quotient_map(IMat::identity(3), h, h);
    size_t ngen = h.group().torsion.size() + h.group().free_rank;
    CHECK(id.matrix == IMat::identity(ngen));
    CHECK(compose(id, id) == id);
  }
}
