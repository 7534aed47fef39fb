#include <benchmark/benchmark.h>

#include "thetalab/ideal.hpp"
#include "thetalab/theta.hpp"
#include "thetalab/trigonal.hpp"

using namespace thetalab;

namespace {

std::string curve_path(const std::string& name) { return std::string(THETALAB_DATA_DIR) + "/curves/" + name + ".curve"; }

void BM_RowReduce(benchmark::State& st) {
  Field f = Field::prime(10007);
  auto n = static_cast<std::size_t>(st.range(0));
  Rng rng(1);
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.scalar(f);
  set_linalg_threads(static_cast<unsigned>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(row_reduce(m));
  set_linalg_threads(1);
}
BENCHMARK(BM_RowReduce)->Args({100, 1})->Args({200, 1})->Args({200, 4})->Unit(benchmark::kMillisecond);

void BM_IdealQuadrics(benchmark::State& st, const char* name) {
  auto m = load_curve(curve_path(name), Field::prime(10007));
  for (auto _ : st) {
    CanonicalRing ring(m);
    benchmark::DoNotOptimize(ideal_component(ring, 2));
  }
}
BENCHMARK_CAPTURE(BM_IdealQuadrics, GEN6, "GEN6")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_IdealQuadrics, GEN7, "GEN7")->Unit(benchmark::kMillisecond);

void BM_SyzygyKernel(benchmark::State& st, const char* name) {
  auto m = load_curve(curve_path(name), Field::prime(10007));
  CanonicalRing ring(m);
  auto i2 = ideal_component(ring, 2);
  auto i4 = ideal_component(ring, 4);
  for (auto _ : st) benchmark::DoNotOptimize(syzygy_kernel(i2, i4, 1));
}
BENCHMARK_CAPTURE(BM_SyzygyKernel, QUINTIC, "QUINTIC")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SyzygyKernel, GEN7, "GEN7")->Unit(benchmark::kMillisecond);

void BM_Petri(benchmark::State& st) {
  auto m = load_curve(curve_path("GEN6"), Field::prime(10007));
  CanonicalRing ring(m);
  auto i2 = ideal_component(ring, 2);
  auto pts = sample_points(m, 6, 3);
  for (auto _ : st) benchmark::DoNotOptimize(petri_basis(ring, i2, pts));
}
BENCHMARK(BM_Petri)->Unit(benchmark::kMillisecond);

void BM_TrigonalCorank(benchmark::State& st) {
  auto m = load_curve(curve_path("TRIG7"), Field::prime(10007));
  CanonicalRing ring(m);
  auto i2 = ideal_component(ring, 2);
  auto tc = trigonal_context(ring, 1);
  for (auto _ : st) benchmark::DoNotOptimize(corank_certificate(tc, i2, 2));
}
BENCHMARK(BM_TrigonalCorank)->Unit(benchmark::kMillisecond);

void BM_Theta2(benchmark::State& st) {
  int g = static_cast<int>(st.range(0));
  auto ctx = make_theta_context(random_period_matrix(g, 1));
  CVector w = CVector::Constant(g, std::complex<double>(0.1, 0.05));
  for (auto _ : st) benchmark::DoNotOptimize(theta2(ctx, w, 2));
}
BENCHMARK(BM_Theta2)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_KummerTangent(benchmark::State& st) {
  auto ctx = make_theta_context(random_period_matrix(static_cast<int>(st.range(0)), 1));
  for (auto _ : st) benchmark::DoNotOptimize(kummer_tangent_report(ctx));
}
BENCHMARK(BM_KummerTangent)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
