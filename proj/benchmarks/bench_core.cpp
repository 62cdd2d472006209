#include <benchmark/benchmark.h>

#include <random>

#include "galiray/cocycles.hpp"
#include "galiray/harness.hpp"
#include "galiray/verify.hpp"

using namespace galiray;

static void BM_Multiply(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const GalileiElement a = random_element(1, dim, 1.0);
  const GalileiElement b = random_element(2, dim, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->Arg(1)->Arg(2)->Arg(3);

static void BM_CocycleSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cocycle_check("xi0", 3, 1000, 5, 1.0, 1e-10));
}
BENCHMARK(BM_CocycleSweep)->Unit(benchmark::kMillisecond);

static void BM_ExtractMultiplier(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const RepDescriptor rep = RepDescriptor::defaults(RepKind::nonabelian2d);
  const GalileiElement r = random_element(rng, 2, 1.0);
  const GalileiElement s = random_element(rng, 2, 1.0);
  const PolyGaussianState f = random_state(rng, 2, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(extract_multiplier(rep, r, s, TimeLabel{0.5}, f));
}
BENCHMARK(BM_ExtractMultiplier)->Unit(benchmark::kMicrosecond);

static void BM_InfinitesimalExponents(benchmark::State& state) {
  const SuiteConfig c = SuiteConfig::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(infexp_check("xi0", 3, c.tau_sequence, 1e-6));
}
BENCHMARK(BM_InfinitesimalExponents)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
