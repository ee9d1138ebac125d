#include <benchmark/benchmark.h>

#include <vector>

#include "fresco/fragmenters.hpp"
#include "fresco/geometry.hpp"
#include "fresco/metrics.hpp"
#include "fresco/raster.hpp"
#include "fresco/rng.hpp"

using namespace fresco;
using fragmenters::FragmentationConfig;
using fragmenters::Method;

namespace {

std::vector<geometry::Point2> random_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<geometry::Point2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform(0, 2048), rng.uniform(0, 1536)});
  return pts;
}

void BM_Delaunay(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::delaunay_triangulate(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Delaunay)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_VoronoiLabels(benchmark::State& state) {
  const auto sites = random_points(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::voronoi_labels(sites, 2048, 1536));
}
BENCHMARK(BM_VoronoiLabels)->Arg(12)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_Fragment(benchmark::State& state) {
  const auto method = static_cast<Method>(state.range(0));
  auto c = FragmentationConfig::for_method(method);
  c.target_count = static_cast<int>(state.range(1));
  c.cut_count = static_cast<int>(state.range(1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    c.seed = seed++;
    benchmark::DoNotOptimize(fragmenters::fragment(2048, 1536, c));
  }
}
BENCHMARK(BM_Fragment)
    ->ArgNames({"method", "n"})
    ->Args({static_cast<int>(Method::SquareGrid), 160})
    ->Args({static_cast<int>(Method::CrossingCuts), 20})
    ->Args({static_cast<int>(Method::NonConvexPartition), 40})
    ->Args({static_cast<int>(Method::NonConvexPartition), 160})
    ->Args({static_cast<int>(Method::ErodedVoronoi), 40})
    ->Args({static_cast<int>(Method::ErodedVoronoi), 160})
    ->Unit(benchmark::kMillisecond);

void BM_Erode(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  raster::RasterMask m({0, 0, 400, 300});
  for (int y = 0; y < 300; ++y) {
    for (int x = 0; x < 400; ++x) m.set(x, y, (x - 200) * (x - 200) + (y - 150) * (y - 150) < 140 * 140 ? 1.0f : 0.0f);
  }
  for (auto _ : state) benchmark::DoNotOptimize(raster::erode_mask(m, r));
}
BENCHMARK(BM_Erode)->Arg(5)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_Rasterize(benchmark::State& state) {
  Rng rng(3);
  const auto p = geometry::random_convex_polygon(2048, 1536, rng);
  for (auto _ : state) benchmark::DoNotOptimize(raster::rasterize_polygon(p, {0, 0, 2048, 1536}));
}
BENCHMARK(BM_Rasterize)->Unit(benchmark::kMillisecond);

void BM_MetricsReport(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<int> t(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = 1 + static_cast<int>(rng.below(11));
    p[i] = 1 + static_cast<int>(rng.below(11));
  }
  for (auto _ : state) benchmark::DoNotOptimize(metrics::metrics_report(t, p, 11));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MetricsReport)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
