#include <benchmark/benchmark.h>

#include "walklab/chain.hpp"
#include "walklab/complex.hpp"
#include "walklab/limit.hpp"
#include "walklab/quotient.hpp"
#include "walklab/spectra.hpp"

using namespace walklab;

static void BM_BuildBuilding(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_building(4, q, 2).level_size(2));
}
BENCHMARK(BM_BuildBuilding)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Updown(benchmark::State& state) {
  const Complex c = build_building(4, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(chain::updown(c, 1).nonzeros());
}
BENCHMARK(BM_Updown)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_DenseSpectrum(benchmark::State& state) {
  const Complex c = build_building(4, static_cast<int>(state.range(0)), 1);
  const auto m = chain::symmetrized_updown(c, 0, chain::updown(c, 0));
  for (auto _ : state) benchmark::DoNotOptimize(spectra::sym_eig(m).values.size());
}
BENCHMARK(BM_DenseSpectrum)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BuildingQuotient(benchmark::State& state) {
  const Complex c = build_building(4, 3, 2);
  const RatMatrix delta = chain::updown(c, 1);
  for (auto _ : state) benchmark::DoNotOptimize(quotient::building_quotient(c, 1, delta).flags.size());
}
BENCHMARK(BM_BuildingQuotient)->Unit(benchmark::kMillisecond);

static void BM_QuotientMinpoly(benchmark::State& state) {
  const RatMatrix qm = quotient::closed_form_quotient(static_cast<int>(state.range(0)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectra::minpoly_distinct_count(qm));
}
BENCHMARK(BM_QuotientMinpoly)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_ClosedFormSpectrum(benchmark::State& state) {
  for (auto _ : state) {
    const auto s = quotient::symmetrize(quotient::closed_form_quotient(5, 1024, 1)).matrix;
    benchmark::DoNotOptimize(spectra::sym_eig(s).values.size());
  }
}
BENCHMARK(BM_ClosedFormSpectrum)->Unit(benchmark::kMillisecond);

static void BM_LimitBlocks(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(limit::blocks(n, 1).blocks.size());
}
BENCHMARK(BM_LimitBlocks)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
