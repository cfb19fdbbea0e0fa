#include <benchmark/benchmark.h>

#include "orthospec/hyp2.hpp"
#include "orthospec/surfaces.hpp"

using namespace orthospec;

static void BM_IsometryProduct(benchmark::State& state) {
  const hyp2::Isometry g = hyp2::Isometry::translation_along_unit_circle(1.3);
  hyp2::Isometry m;
  for (auto _ : state) {
    m = m * g;
    benchmark::DoNotOptimize(m);
    if (m.trace() > 1e100) m = hyp2::Isometry();
  }
}
BENCHMARK(BM_IsometryProduct);

static void BM_DistGeodesics(benchmark::State& state) {
  const hyp2::HGeodesic a(hyp2::IdealPoint::finite(-1.0), hyp2::IdealPoint::finite(1.0));
  const hyp2::HGeodesic b(hyp2::IdealPoint::finite(2.0), hyp2::IdealPoint::finite(5.0));
  for (auto _ : state) benchmark::DoNotOptimize(hyp2::dist_geodesics(a, b));
}
BENCHMARK(BM_DistGeodesics);

static void BM_BuildPants(benchmark::State& state) {
  for (auto _ : state) {
    auto m = surfaces::build_pants(2.0, 3.0, 4.0);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_BuildPants);
