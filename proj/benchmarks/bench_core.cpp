#include "nilstab/extensions.hpp"
#include "nilstab/obstruction.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace nilstab;

static void BM_HeisenbergMultiply(benchmark::State& state)
{
  const MalcevGroup H = make_heisenberg3();
  ElementSampler s(3, 100, 1);
  GroupElement x = s.next(), y = s.next();
  for (auto _ : state)
    benchmark::DoNotOptimize(multiply(H, x, y));
}
BENCHMARK(BM_HeisenbergMultiply);

static void BM_BuildRho(benchmark::State& state)
{
  PolyCocycle h = builtin_cocycle("heisenberg_skinny");
  const auto n = static_cast<std::size_t>(state.range(0));
  GroupElement x{2, -3, 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(build_rho(h, n, x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildRho)->Arg(15)->Arg(63)->Arg(255)->Arg(1023)->Complexity();

static void BM_ComposeStructured(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  VoiculescuPair p = voiculescu_pair(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(compose(p.u, p.v));
}
BENCHMARK(BM_ComposeStructured)->RangeMultiplier(4)->Range(16, 1024);

static void BM_ComposeDense(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  VoiculescuPair p = voiculescu_pair(n);
  DenseMatrix U = to_dense(p.u), V = to_dense(p.v);
  for (auto _ : state) {
    DenseMatrix W = U * V;
    benchmark::DoNotOptimize(W.data());
  }
}
BENCHMARK(BM_ComposeDense)->RangeMultiplier(4)->Range(16, 256);

static void BM_OperatorNorm(benchmark::State& state)
{
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  DenseMatrix D(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      D(i, j) = Complex(g(rng), g(rng));
  for (auto _ : state)
    benchmark::DoNotOptimize(operator_norm(D));
}
BENCHMARK(BM_OperatorNorm)->RangeMultiplier(4)->Range(16, 256);

static void BM_Defect(benchmark::State& state)
{
  PolyCocycle z = builtin_cocycle("z2_skinny");
  const auto n = static_cast<std::size_t>(state.range(0));
  GroupElement x{1, 2}, y{3, -1};
  for (auto _ : state)
    benchmark::DoNotOptimize(defect(z, n, x, y));
}
BENCHMARK(BM_Defect)->RangeMultiplier(4)->Range(16, 256);

static void BM_WindingPairing(benchmark::State& state)
{
  PolyCocycle z = builtin_cocycle("z2_skinny");
  const auto n = static_cast<std::size_t>(state.range(0));
  const MalcevGroup G = make_lattice(2);
  UnitaryFamily rho = rho_family(z, n);
  Chain2 c = voiculescu_cycle();
  for (auto _ : state)
    benchmark::DoNotOptimize(winding_pairing(rho, c, G));
}
BENCHMARK(BM_WindingPairing)->RangeMultiplier(2)->Range(16, 128);

static void BM_CocycleCheckGrid(benchmark::State& state)
{
  PolyCocycle h = builtin_cocycle("heisenberg_skinny");
  for (auto _ : state)
    benchmark::DoNotOptimize(cocycle_check(Cocycle(h), {{500, 3, kDefaultSeed}, true, 2}));
}
BENCHMARK(BM_CocycleCheckGrid)->Unit(benchmark::kMillisecond);

static void BM_SkinnyInterpolation(benchmark::State& state)
{
  CentralExtension E = central_extension(builtin_cocycle("z2_skinny"));
  KernelCocycle w = lemma_hard_cocycle(E, canonical_character(*E.base));
  for (auto _ : state)
    benchmark::DoNotOptimize(interpolate_polynomial_cocycle(w));
}
BENCHMARK(BM_SkinnyInterpolation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
