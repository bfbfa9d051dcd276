#include <benchmark/benchmark.h>

#include "pretor/enumerate.hpp"
#include "pretor/gallery.hpp"
#include "pretor/pretorsion.hpp"

namespace {

void BM_BuildChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    pretor::FinCategory c = pretor::chain(n);
    benchmark::DoNotOptimize(c.morphism_count());
  }
}
BENCHMARK(BM_BuildChain)->Arg(8)->Arg(16);

void BM_BuildEndomap(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    pretor::GalleryResult g = pretor::endomap_category(k);
    benchmark::DoNotOptimize(g.category.morphism_count());
  }
}
BENCHMARK(BM_BuildEndomap)->Arg(2);

void BM_CheckN5(benchmark::State& state) {
  pretor::FinCategory c = pretor::n5();
  pretor::FullSub torsion = pretor::FullSub::of_names(c, {"T", "Z", "Z'"});
  pretor::FullSub free = pretor::FullSub::of_names(c, {"F", "Z", "Z'"});
  for (auto _ : state) {
    pretor::PretorsionCheck pc = pretor::check_pretorsion(torsion, free);
    benchmark::DoNotOptimize(pc.valid());
  }
}
BENCHMARK(BM_CheckN5);

void BM_EnumerateChain(benchmark::State& state) {
  pretor::FinCategory c = pretor::chain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto found = pretor::enumerate_pretorsion(c);
    benchmark::DoNotOptimize(found.size());
  }
}
BENCHMARK(BM_EnumerateChain)->Arg(4)->Arg(6);

void BM_ChainOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto data = pretor::chain_oracle(n);
    benchmark::DoNotOptimize(data.size());
  }
}
BENCHMARK(BM_ChainOracle)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
