#include <benchmark/benchmark.h>

#include <cmath>

#include "orthospec/series.hpp"

using namespace orthospec;

namespace {

std::vector<double> zeta_lengths(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(static_cast<double>(i + 1));
  return out;
}

}  // namespace

static void BM_FitTail(benchmark::State& state) {
  const auto ls = zeta_lengths(static_cast<std::size_t>(state.range(0)));
  series::FitOptions o;
  o.terms = 2;
  for (auto _ : state) benchmark::DoNotOptimize(series::fit_tail(ls, o).constant);
}
BENCHMARK(BM_FitTail)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_ContinueAtZero(benchmark::State& state) {
  const auto ls = zeta_lengths(100000);
  series::ContinuationOptions o;
  for (auto _ : state) benchmark::DoNotOptimize(series::continue_at_zero(ls, o).value);
}
BENCHMARK(BM_ContinueAtZero)->Unit(benchmark::kMillisecond);

static void BM_PartialSum(benchmark::State& state) {
  const auto ls = zeta_lengths(1000000);
  for (auto _ : state) benchmark::DoNotOptimize(series::partial_sum(ls, 0.5));
}
BENCHMARK(BM_PartialSum)->Unit(benchmark::kMillisecond);
