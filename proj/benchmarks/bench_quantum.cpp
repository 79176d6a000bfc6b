#include <benchmark/benchmark.h>

#include "qtoric/cohomology.hpp"
#include "qtoric/quantum.hpp"
#include "qtoric/standard_fans.hpp"

#ifdef QTORIC_BENCH_CENSUS
#include "cli.hpp"
#endif

namespace {

using namespace qtoric;

Fan bench_fan(std::int64_t which) {
  switch (which) {
    case 0: return fans::projective_plane();
    case 1: return fans::blown_up_plane_3();
    case 2: return fans::projective_space(3);
    default: return fans::blow_up(fans::projective_space(3), {0, 1, 2});
  }
}

void BM_CohomologyRing(benchmark::State& state) {
  const Fan fan = bench_fan(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CohomologyRing(fan).basis_size());
}
BENCHMARK(BM_CohomologyRing)->DenseRange(0, 3);

void BM_QuantumRing(benchmark::State& state) {
  const Fan fan = bench_fan(state.range(0));
  for (auto _ : state) {
    QuantumRing ring(fan);
    benchmark::DoNotOptimize(ring.num_rays());
  }
}
BENCHMARK(BM_QuantumRing)->DenseRange(0, 3);

// All products of pairs of basis classes on a fresh ring.
void BM_BasisProducts(benchmark::State& state) {
  const Fan fan = bench_fan(state.range(0));
  for (auto _ : state) {
    const QuantumRing ring(fan);
    const std::size_t b = ring.cohomology().basis_size();
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j)
        benchmark::DoNotOptimize(ring.product(CohomologyClass::basis(i), CohomologyClass::basis(j)));
  }
}
BENCHMARK(BM_BasisProducts)->DenseRange(0, 3);

void BM_ReduceMonomial(benchmark::State& state) {
  const Fan fan = fans::blown_up_plane_3();
  std::mt19937_64 rng(1);
  const QuantumRing ring(fan);
  Monomial m;
  for (std::int64_t k = 0; k < state.range(0); ++k) m.push_back(static_cast<std::size_t>(k) % fan.num_rays());
  m = make_monomial(m);
  for (auto _ : state) benchmark::DoNotOptimize(ring.reduce_monomial(m, rng));
}
BENCHMARK(BM_ReduceMonomial)->RangeMultiplier(2)->Range(2, 16);

#ifdef QTORIC_BENCH_CENSUS
void BM_Census(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cli::census_2d(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Census)->DenseRange(4, 8, 2);
#endif

}  // namespace

BENCHMARK_MAIN();
