#include <benchmark/benchmark.h>

#include "symrank/constructions.hpp"
#include "symrank/search.hpp"
#include "symrank/spaces.hpp"

using namespace symrank;

namespace {

Field field_for(std::int64_t q) {
  switch (q) {
    case 4: return Field::make(2, 2);
    case 8: return Field::make(2, 3);
    case 16: return Field::make(2, 4);
    default: return Field::make(static_cast<std::uint32_t>(q), 1);
  }
}

void BM_FieldMul(benchmark::State& state) {
  const Field f = field_for(state.range(0));
  const Code q = static_cast<Code>(f.q());
  Code acc = 1;
  for (auto _ : state) {
    for (Code a = 1; a < q; ++a) acc = f.add(f.mul(acc, a), 1);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (q - 1));
}
BENCHMARK(BM_FieldMul)->Arg(2)->Arg(3)->Arg(16);

void BM_Rank(benchmark::State& state) {
  const Field f = field_for(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(7);
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, static_cast<Code>(rng.below(f.q())));
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Args({6, 2})->Args({6, 4})->Args({16, 2})->Args({16, 16});

void BM_RankSpectrum(benchmark::State& state) {
  const Field f = field_for(state.range(0));
  const FormSubspace m = trace_form_space(f, 3);
  const EnumerationOptions opts{kDefaultEnumerationCap, static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(rank_spectrum(m, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(projective_count(f.q(), m.dim())));
}
BENCHMARK(BM_RankSpectrum)->Args({2, 1})->Args({4, 1})->Args({4, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
