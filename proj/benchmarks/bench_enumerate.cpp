#include <benchmark/benchmark.h>

#include "orthospec/enumerate.hpp"

using namespace orthospec;

// Orthospectrum of pants(2,2,2); the argument is the cutoff.
static void BM_Orthospectrum(benchmark::State& state) {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  enumerate::EnumerationOptions o;
  o.cutoff = static_cast<double>(state.range(0));
  std::size_t count = 0;
  for (auto _ : state) {
    count = enumerate::enumerate_orthogeodesics(m, o).records.size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["records"] = static_cast<double>(count);
}
BENCHMARK(BM_Orthospectrum)->Arg(10)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

static void BM_Arcs(benchmark::State& state) {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  enumerate::EnumerationOptions o;
  o.cutoff = static_cast<double>(state.range(0));
  std::size_t count = 0;
  for (auto _ : state) {
    count = enumerate::enumerate_arcs(m, m.domain_midpoint(), m.domain_midpoint(), o)
                .arcs.size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["arcs"] = static_cast<double>(count);
}
BENCHMARK(BM_Arcs)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
