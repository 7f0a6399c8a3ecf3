#include <benchmark/benchmark.h>

#include <random>

#include "onewave/imaging.hpp"
#include "onewave/specfun.hpp"

using namespace onewave;

static void BM_BesselRun(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    double t = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_jy_sequence(n, t));
        t = t > 40.0 ? 0.5 : t + 0.37;
    }
}
BENCHMARK(BM_BesselRun)->Arg(60)->Arg(80)->Arg(150);

static void BM_DiskEigenvalueRun(benchmark::State& state) {
    double h = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(disk_eigenvalue_run(60, 6.0, h, {}));
        h = h > 7.9 ? 0.05 : h + 0.05;
    }
}
BENCHMARK(BM_DiskEigenvalueRun);

static void BM_HermitianEigen(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(1);
    std::normal_distribution<double> nd;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = nd(gen);
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = {nd(gen), nd(gen)};
            a(j, i) = std::conj(a(i, j));
        }
    }
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(a));
}
BENCHMARK(BM_HermitianEigen)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_InnerProducts(benchmark::State& state) {
    const Vec2 pts[] = {{-2, 0}};
    const auto u = point_far_field(pts, 6.0, 512);
    for (auto _ : state) benchmark::DoNotOptimize(inner_products(u, 60, {4, 0}));
}
BENCHMARK(BM_InnerProducts);

static void BM_DiskFarField(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(disk_far_field({{0.5, 0}, 1.0, {}}, 6.0, Direction(0.3), 512));
}
BENCHMARK(BM_DiskFarField);

static void BM_RadiusThreshold(benchmark::State& state) {
    const Vec2 pts[] = {{-2, 0}};
    const auto u = point_far_field(pts, 6.0, 512);
    const ImagingConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(radius_threshold(u, {4, 0}, cfg));
}
BENCHMARK(BM_RadiusThreshold)->Unit(benchmark::kMillisecond);

static void BM_SchemeTwoSmallGrid(benchmark::State& state) {
    const PolygonSource tri{{{-2, -2}, {2, -2}, {-2, 2}}};
    const auto u = polygon_source_far_field(tri, 6.0, 512);
    ImagingConfig cfg;
    cfg.grid = {-4, 4, -4, 4, 32, 32};
    for (auto _ : state) benchmark::DoNotOptimize(scheme_two(u, cfg));
}
BENCHMARK(BM_SchemeTwoSmallGrid)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
