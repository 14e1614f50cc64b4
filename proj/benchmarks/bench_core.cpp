#include <benchmark/benchmark.h>

#include <random>

#include "miquel/coords.hpp"
#include "miquel/dynamics.hpp"
#include "miquel/forge.hpp"
#include "miquel/invariants.hpp"

using namespace miquel;

namespace {

TorusPattern noisy_grid(int m, int n, int s, double noise, unsigned seed) {
  std::mt19937 g(seed);
  std::uniform_real_distribution<double> d(-noise, noise);
  std::vector<Point> verts;
  verts.reserve(static_cast<std::size_t>(m) * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x) verts.push_back({x + d(g), y + d(g)});
  return TorusPattern(m, n, s, std::move(verts), Vec2(m, 0), Vec2(s, n));
}

const TorusPattern& sample_pattern(int m, int n, int s) {
  static std::map<std::tuple<int, int, int>, TorusPattern> cache;
  auto it = cache.find({m, n, s});
  if (it == cache.end())
    it = cache.emplace(std::tuple{m, n, s},
                       forge_pattern(noisy_grid(m, n, s, 0.07, 1)).pattern)
             .first;
  return it->second;
}

}  // namespace

static void BM_Mutate(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const TorusPattern& p = sample_pattern(m, 2, 0);
  for (auto _ : state) {
    TorusPattern q = mutate(p, Color::black);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_Mutate)->Arg(2)->Arg(4)->Arg(8);

static void BM_ExtractPhi(benchmark::State& state) {
  const TorusPattern& p = sample_pattern(static_cast<int>(state.range(0)), 2, 0);
  for (auto _ : state) {
    PhiField f = extract_phi(p);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_ExtractPhi)->Arg(4)->Arg(8);

static void BM_RecurrenceStep(benchmark::State& state) {
  const XField x = to_x(extract_phi(sample_pattern(static_cast<int>(state.range(0)), 2, 0)));
  for (auto _ : state) {
    XField y = recurrence_step(x, Color::black);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_RecurrenceStep)->Arg(4)->Arg(8);

static void BM_Reconstruct(benchmark::State& state) {
  const PhiField f = extract_phi(sample_pattern(static_cast<int>(state.range(0)), 2, 0));
  for (auto _ : state) {
    TorusPattern p = reconstruct(f);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_Reconstruct)->Arg(4)->Arg(8);

static void BM_GammaGenerators(benchmark::State& state) {
  const TorusPattern& p = sample_pattern(4, 2, 2);
  for (auto _ : state) {
    GammaValue g = gamma_generators(p);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_GammaGenerators);

static void BM_Forge(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const TorusPattern seed = noisy_grid(m, 2, 0, 0.05, 7);
  for (auto _ : state) {
    ForgeResult r = forge_pattern(seed);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Forge)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
