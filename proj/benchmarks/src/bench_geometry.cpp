#include <benchmark/benchmark.h>

#include "curv/geometry.hpp"
#include "curv/lagrange.hpp"

using namespace curv;

namespace {

CurvilinearGeometry curvedTet(int order, bool precompute) {
  std::vector<Vec> verts;
  for (const Vec& r : simplexGridCoordinates(3, order))
    verts.push_back(Vec{r[0] + 0.1 * r[1] * r[1], r[1] + 0.05 * r[2] * r[2], r[2]});
  return CurvilinearGeometry(3, 3, order, std::move(verts), precompute);
}

void basisConstruction(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(LagrangeBasis(3, order));
}

void localToGlobal(benchmark::State& state) {
  const auto geom = curvedTet(static_cast<int>(state.range(0)), true);
  const Vec r{0.21, 0.33, 0.17};
  for (auto _ : state) benchmark::DoNotOptimize(geom.global(r));
}

void globalToLocal(benchmark::State& state) {
  const auto geom = curvedTet(3, true);
  const Vec x = geom.global(Vec{0.21, 0.33, 0.17});
  for (auto _ : state) benchmark::DoNotOptimize(geom.localRestrictive(x, 1e-10));
}

void volumeAdaptive(benchmark::State& state) {
  const auto geom = curvedTet(3, true);
  for (auto _ : state) benchmark::DoNotOptimize(geom.volume(1e-6));
}

} // namespace

BENCHMARK(basisConstruction)->Arg(2)->Arg(5);
BENCHMARK(localToGlobal)->Arg(1)->Arg(3)->Arg(5);
BENCHMARK(globalToLocal);
BENCHMARK(volumeAdaptive);
