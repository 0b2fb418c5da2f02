#include <benchmark/benchmark.h>

#include <hft/chain.hpp>
#include <hft/dynamics.hpp>
#include <hft/geometry.hpp>
#include <hft/tangle.hpp>
#include <hft/zmod.hpp>

#include <random>
#include <vector>

using namespace hft;

namespace {

// Sparse small-entry matrices shaped like boundary operators: a few +/-1
// and +/-2 entries per row. Dense random input is not representative and
// triggers severe coefficient swell in any elimination-based normal form.
IMat boundary_like_matrix(size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> val(1, 2), sgn(0, 1);
  std::uniform_int_distribution<size_t> col(0, n - 1);
  IMat A(n, n);
  for (size_t i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) A(i, col(rng)) = (sgn(rng) ? 1 : -1) * val(rng);
  return A;
}

const TangleDiagram& grown_default() {
  static TangleDiagram d = grow_tangle(henon_spec(3), GrowthParams{});
  return d;
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
  size_t n = static_cast<size_t>(state.range(0));
  IMat A = boundary_like_matrix(n, 7u + static_cast<unsigned>(n));
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32);

static void BM_MaslovIndex(benchmark::State& state) {
  const TangleDiagram& d = grown_default();
  std::vector<std::string> ids;
  for (const auto& p : d.points)
    if (!p.is_fixed_point) ids.push_back(p.id);
  for (auto _ : state) {
    int acc = 0;
    for (const auto& q : ids) acc += maslov_rel(d, ids.front(), q);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_MaslovIndex);

static void BM_SignTable(benchmark::State& state) {
  const TangleDiagram& d = grown_default();
  std::vector<std::string> ids;
  for (const auto& p : d.points)
    if (!p.is_fixed_point) ids.push_back(p.id);
  if (ids.size() > 12) ids.resize(12);
  for (auto _ : state) {
    int acc = 0;
    for (const auto& p : ids)
      for (const auto& q : ids)
        if (p != q && maslov_rel(d, p, q) == 1) acc += sign_n(d, p, q, '+');
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_SignTable);

static void BM_BuildComplexFixture(benchmark::State& state) {
  TangleDiagram d = builtin_example("fig3b_left");
  std::vector<std::string> E;
  for (const auto& p : d.points)
    if (!p.is_fixed_point) E.push_back(p.id);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_complex(d, E, '+', Coeff::Z));
}
BENCHMARK(BM_BuildComplexFixture);

static void BM_PruneFixture(benchmark::State& state) {
  TangleDiagram d = builtin_example("cascade");
  std::vector<std::string> E;
  for (const auto& p : d.points)
    if (!p.is_fixed_point) E.push_back(p.id);
  for (auto _ : state) benchmark::DoNotOptimize(prune(d, E, '+'));
}
BENCHMARK(BM_PruneFixture);

static void BM_GrowTangle(benchmark::State& state) {
  MapSpec hs = henon_spec(3);
  GrowthParams gp;
  gp.max_arc_length = 4;
  gp.window = 1.8;
  for (auto _ : state) benchmark::DoNotOptimize(grow_tangle(hs, gp));
}
BENCHMARK(BM_GrowTangle);

BENCHMARK_MAIN();
