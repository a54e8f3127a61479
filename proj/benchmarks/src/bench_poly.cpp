#include <benchmark/benchmark.h>

#include <random>

#include "curv/poly.hpp"

using namespace curv;

namespace {

Polynomial makePoly(int dim, int order) {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Polynomial p(dim);
  std::uniform_int_distribution<int> powd(0, order);
  for (int t = 0; t < 24; ++t) {
    std::vector<int> pow(dim, 0);
    int left = order;
    for (int j = 0; j < dim; ++j) {
      pow[j] = std::min(left, powd(rng));
      left -= pow[j];
    }
    p += Monomial(coeff(rng), pow);
  }
  return p;
}

void evaluatePlain(benchmark::State& state) {
  const Polynomial p = makePoly(3, static_cast<int>(state.range(0)));
  const Vec r{0.21, 0.33, 0.17};
  for (auto _ : state) benchmark::DoNotOptimize(p.evaluate(r));
}

void evaluateCached(benchmark::State& state) {
  const Polynomial p = makePoly(3, static_cast<int>(state.range(0))).cache();
  const Vec r{0.21, 0.33, 0.17};
  for (auto _ : state) benchmark::DoNotOptimize(p.evaluate(r));
}

void multiply(benchmark::State& state) {
  const Polynomial a = makePoly(3, 4);
  const Polynomial b = makePoly(3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

void integrateClosedForm(benchmark::State& state) {
  const Polynomial p = makePoly(3, 8);
  for (auto _ : state) benchmark::DoNotOptimize(p.integrateRefSimplex());
}

} // namespace

BENCHMARK(evaluatePlain)->Arg(3)->Arg(8);
BENCHMARK(evaluateCached)->Arg(3)->Arg(8);
BENCHMARK(multiply);
BENCHMARK(integrateClosedForm);
