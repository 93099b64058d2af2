#include <benchmark/benchmark.h>

#include "sphdist/certify.hpp"
#include "sphdist/distortion.hpp"
#include "sphdist/projection.hpp"
#include "sphdist/trig.hpp"

namespace {

void BM_TriangleFromParams(benchmark::State& state) {
  sphdist::TriangleParams p{1.1, 0.4, 1.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphdist::triangle_from_params(p).a());
  }
}
BENCHMARK(BM_TriangleFromParams);

void BM_AngleDistortion(benchmark::State& state) {
  auto f = sphdist::DistortionFamily::finf();
  sphdist::SphericalTriangle tri =
      sphdist::triangle_from_params({1.1, 0.4, 1.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphdist::angle_distortion(f, tri).D);
  }
}
BENCHMARK(BM_AngleDistortion);

void BM_Circumradius(benchmark::State& state) {
  sphdist::SphericalTriangle tri(0.8, 0.9, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tri.circumradius());
  }
}
BENCHMARK(BM_Circumradius);

void BM_Eta(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphdist::eta(0.7, 1.0));
  }
}
BENCHMARK(BM_Eta);

void BM_ScanSmall(benchmark::State& state) {
  sphdist::ScanSpec spec;
  spec.family = sphdist::DistortionFamily::finf();
  spec.r_max = sphdist::b0() - 0.1;
  spec.n_r = 8;
  spec.n_phi = 16;
  spec.n_t = 16;
  spec.refine_seeds = 5;
  spec.refine_budget = 50;
  spec.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphdist::scan_infimum(spec).infimum);
  }
}
BENCHMARK(BM_ScanSmall);

}  // namespace

BENCHMARK_MAIN();
