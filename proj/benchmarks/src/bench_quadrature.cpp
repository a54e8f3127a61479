#include <benchmark/benchmark.h>

#include <cmath>

#include "curv/quadrature.hpp"

using namespace curv;

namespace {

void adaptiveSqrtProduct(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  IntegratorConfig cfg;
  for (auto _ : state) {
    const auto stat = integrateRecursive(
        dim,
        [](const Vec& r) {
          double p = 1;
          for (int i = 0; i < r.size(); ++i) p *= r[i];
          return std::sqrt(p);
        },
        cfg);
    benchmark::DoNotOptimize(stat.value);
  }
}

void fixedRulePolynomial(benchmark::State& state) {
  const auto rule = simplexRule(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const double v = integrateFixed(*rule, [](const Vec& r) {
      return r[0] * r[0] * r[1] + r[2];
    });
    benchmark::DoNotOptimize(v);
  }
}

} // namespace

BENCHMARK(adaptiveSqrtProduct)->Arg(1)->Arg(2)->Arg(3);
BENCHMARK(fixedRulePolynomial)->Arg(5)->Arg(15);
