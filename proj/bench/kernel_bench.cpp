// Serial vs OpenMP kernels on fixed inputs.
#include <benchmark/benchmark.h>

#include "extiso/families.hpp"
#include "extiso/kernels.hpp"

using namespace extiso;

namespace {

const GroupPtr& a5() {
  static GroupPtr g = families::alternating(5);
  return g;
}

const GroupPtr& s5() {
  static GroupPtr g = families::symmetric(5);
  return g;
}

void BM_AssocSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::associative_full_serial(*a5()));
}
void BM_AssocParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::associative_full_parallel(*a5()));
}

void BM_LightSerial(benchmark::State& st) {
  const auto& g = *s5();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::light_test_serial(g.order(), g.table().data(), g.generators()));
}
void BM_LightParallel(benchmark::State& st) {
  const auto& g = *s5();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::light_test_parallel(g.order(), g.table().data(), g.generators()));
}

void BM_CocycleSystemSerial(benchmark::State& st) {
  const auto& q = *a5();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::cocycle_identity_system_serial(q, q.generators()));
}
void BM_CocycleSystemParallel(benchmark::State& st) {
  const auto& q = *a5();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::cocycle_identity_system_parallel(q, q.generators()));
}

void BM_Gf2RrefSerial(benchmark::State& st) {
  const auto& q = *a5();
  auto m = kernels::cocycle_identity_system_serial(q, q.generators());
  for (auto _ : st) {
    auto c = m;
    benchmark::DoNotOptimize(kernels::gf2_rref_serial(c));
  }
}
void BM_Gf2RrefParallel(benchmark::State& st) {
  const auto& q = *a5();
  auto m = kernels::cocycle_identity_system_serial(q, q.generators());
  for (auto _ : st) {
    auto c = m;
    benchmark::DoNotOptimize(kernels::gf2_rref_parallel(c));
  }
}

void BM_CoboundarySerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::coboundary_generators_serial(*a5(), 3));
}
void BM_CoboundaryParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::coboundary_generators_parallel(*a5(), 3));
}

void BM_ModpRrefSerial(benchmark::State& st) {
  auto m = kernels::coboundary_generators_serial(*a5(), 3);
  for (auto _ : st) {
    auto c = m;
    benchmark::DoNotOptimize(kernels::modp_rref_serial(c));
  }
}
void BM_ModpRrefParallel(benchmark::State& st) {
  auto m = kernels::coboundary_generators_serial(*a5(), 3);
  for (auto _ : st) {
    auto c = m;
    benchmark::DoNotOptimize(kernels::modp_rref_parallel(c));
  }
}

}  // namespace

BENCHMARK(BM_AssocSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssocParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LightSerial);
BENCHMARK(BM_LightParallel);
BENCHMARK(BM_CocycleSystemSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CocycleSystemParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gf2RrefSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gf2RrefParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoboundarySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoboundaryParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModpRrefSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModpRrefParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
