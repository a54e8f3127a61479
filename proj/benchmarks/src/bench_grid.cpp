#include <benchmark/benchmark.h>

#include "curv/gmshreader.hpp"
#include "curv/grid.hpp"

using namespace curv;

namespace {

void buildGrid(benchmark::State& state) {
  const int nRanks = static_cast<int>(state.range(0));
  const std::string mesh = std::string(CURV_FIXTURE_DIR) + "/ico3_ball.msh";
  for (auto _ : state) {
    runSimulated(nRanks, [&](Communicator& comm) {
      CurvGridFactory factory(comm, true, true);
      RcbPartitioner rcb;
      (void)readMesh(mesh, comm, rcb, factory);
      benchmark::DoNotOptimize(factory.releaseGrid());
    });
  }
}

} // namespace

BENCHMARK(buildGrid)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
