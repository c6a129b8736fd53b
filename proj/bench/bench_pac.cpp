// Serial reference vs OpenMP kernel on planted point-algebra networks and
// bipartite graphs.

#include <benchmark/benchmark.h>

#include "pac/generators.hpp"
#include "pac/pac.hpp"
#include "pac/point_algebra.hpp"
#include "pac/templates.hpp"

namespace {

pac::Structure network(int n) {
  return pac::random_point_algebra({n, 2 * n, n, true}, 7);
}

void BM_PointAlgebraSerial(benchmark::State &state) {
  const auto a = network(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        pac::pac_decide_serial(a, pac::point_algebra_descriptor()));
  state.SetComplexityN(state.range(0));
}

void BM_PointAlgebraParallel(benchmark::State &state) {
  const auto a = network(static_cast<int>(state.range(0)));
  pac::PacOptions o;
  o.workers = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(pac::point_algebra_pac(a, o));
  state.SetComplexityN(state.range(0));
}

void BM_EvenCycleK2(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  pac::StructureBuilder b(pac::Signature{{"E", 2}}, n);
  for (int i = 0; i < n; ++i)
    b.add(0, {i, (i + 1) % n}).add(0, {(i + 1) % n, i});
  const pac::Structure a = std::move(b).build();
  const pac::FinitePac k2(pac::k2_template());
  pac::PacOptions o;
  o.workers = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(o.workers == 1 ? k2.decide_serial(a, o) : k2.decide(a, o));
  state.SetComplexityN(n);
}

} // namespace

BENCHMARK(BM_PointAlgebraSerial)->RangeMultiplier(2)->Range(100, 800)->Complexity();
BENCHMARK(BM_PointAlgebraParallel)
    ->ArgsProduct({{100, 200, 400, 800}, {2, 4}})
    ->UseRealTime();
BENCHMARK(BM_EvenCycleK2)->ArgsProduct({{200, 400, 800}, {1, 4}})->UseRealTime();

BENCHMARK_MAIN();
