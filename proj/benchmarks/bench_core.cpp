#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "nchol/deligne.hpp"
#include "nchol/derham.hpp"
#include "nchol/functors.hpp"
#include "nchol/jordan.hpp"
#include "nchol/linalg.hpp"
#include "nchol/weyl.hpp"

using namespace nchol;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-5, 5);
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Rational(d(rng));
  return m;
}

// Deligne extension of a rank-2 unipotent system on `axes` axes.
NCModule unipotent_module(std::size_t axes) {
  LocalSystemSpec l = LocalSystemSpec::trivial(axes, 2);
  l.blocks[0].nilpotents[0] = Matrix{{0, 1}, {0, 0}};
  return deligne_meromorphic(l);
}

void BM_Rref(benchmark::State& state) {
  std::mt19937 rng(1);
  Matrix m = random_matrix(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_kernel_image(m));
}
BENCHMARK(BM_Rref)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_PrimaryProjectors(benchmark::State& state) {
  std::vector<Polynomial> fam{cyclotomic(1), cyclotomic(3), cyclotomic(4)};
  Polynomial p = fam[0] * fam[1] * fam[2];
  Matrix t(5, 5);
  for (std::size_t i = 0; i + 1 < 5; ++i) t(i + 1, i) = Rational(1);
  for (std::size_t i = 0; i < 5; ++i) t(i, 4) = -p.coeff(i);
  for (auto _ : state) benchmark::DoNotOptimize(primary_projectors(t, fam));
}
BENCHMARK(BM_PrimaryProjectors);

void BM_Localize(benchmark::State& state) {
  NCModule m = unipotent_module(static_cast<std::size_t>(state.range(0)));
  NCModule o = minimal_extension(m, CoordinateDivisorSpec::divisor({0}));
  for (auto _ : state) benchmark::DoNotOptimize(localize(o, {0}));
}
BENCHMARK(BM_Localize)->DenseRange(1, 3);

void BM_LocalCohomology(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  NCModule m = unipotent_module(n);
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(i);
  CoordinateDivisorSpec y = CoordinateDivisorSpec::coordinate_subspace(all);
  for (auto _ : state) benchmark::DoNotOptimize(local_cohomology(m, y));
}
BENCHMARK(BM_LocalCohomology)->DenseRange(1, 3);

void BM_DualLocalCohomology(benchmark::State& state) {
  NCModule m = unipotent_module(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dual_local_cohomology(m, CoordinateDivisorSpec::divisor({0})));
}
BENCHMARK(BM_DualLocalCohomology)->DenseRange(1, 3);

void BM_DrStalk(benchmark::State& state) {
  NCModule m = deligne_meromorphic(LocalSystemSpec::trivial(static_cast<std::size_t>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(dr_stalk(m));
}
BENCHMARK(BM_DrStalk)->DenseRange(1, 4);

void BM_MonodromyToSpec(benchmark::State& state) {
  // T = companion of Φ_1^2 Φ_3, one axis
  Matrix t{{0, 0, 0, -1}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(monodromy_to_spec({t}));
}
BENCHMARK(BM_MonodromyToSpec);

void BM_NearbyCycles(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  MonomialSpec f{n, n, std::vector<long>(n, 3)};
  std::vector<Rational> a(n, Rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(nearby_cycles_monomial(a, f));
}
BENCHMARK(BM_NearbyCycles)->DenseRange(1, 4);

void BM_PsiOracle(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  MonomialSpec f{n, n, std::vector<long>(n, 3)};
  std::vector<Rational> a(n, Rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(psi_oracle(a, f));
}
BENCHMARK(BM_PsiOracle)->DenseRange(1, 4);

void BM_IotaSquared(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto idx = multi_indices(n, 2);
  SymbolElement x(n);
  for (const auto& mu : idx)
    for (const auto& nu : idx) x.add("η", mu, nu, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(involution_iota(involution_iota(x)));
}
BENCHMARK(BM_IotaSquared)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
