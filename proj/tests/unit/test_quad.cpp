#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "curv/errors.hpp"
#include "curv/quadrature.hpp"
#include "testutil.hpp"

using namespace curv;
using curvtest::approxRel;
using curvtest::randomPolynomial;

TEST_CASE("duffy map") {
  auto [p2, g2] = duffyMap(2, Vec{0.5, 0.5});
  CHECK(p2[0] == 0.5);
  CHECK(p2[1] == 0.25);
  CHECK(g2 == 0.5);

  auto [p3, g3] = duffyMap(3, Vec{0.0, 0.0, 0.0});
  CHECK(p3.twoNorm() == 0.0);
  CHECK(g3 == 1.0);

  for (double t : {0.0, 0.3, 1.0}) {
    auto [p, g] = duffyMap(2, Vec{1.0, t});
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
    CHECK(g == 0.0);
  }
}

TEST_CASE("rule weights sum to the reference volume and points stay inside") {
  const double volumes[4] = {0, 1.0, 0.5, 1.0 / 6.0};
  for (int dim = 1; dim <= 3; ++dim)
    for (int order : {1, 2, 5, 9, 20}) {
      const auto rule = simplexRule(dim, order);
      double sum = 0;
      for (double w : rule->weights) sum += w;
      CHECK(approxRel(sum, volumes[dim], 1e-12));
      for (const Vec& p : rule->points) {
        double s = 0;
        for (int j = 0; j < dim; ++j) {
          CHECK(p[j] >= -1e-14);
          s += p[j];
        }
        CHECK(s <= 1.0 + 1e-14);
      }
    }
}

TEST_CASE("rules are exact on monomials up to their order") {
  std::mt19937 rng(41);
  for (int dim = 1; dim <= 3; ++dim)
    for (int order : {1, 2, 3, 5, 8}) {
      const auto rule = simplexRule(dim, order);
      for (int rep = 0; rep < 10; ++rep) {
        Polynomial p = randomPolynomial(dim, order, rng);
        const double viaRule = integrateFixed(*rule, [&](const Vec& r) { return p.evaluate(r); });
        CHECK(approxRel(viaRule, p.integrateRefSimplex(), 1e-12, 1e-14));
      }
    }
}

TEST_CASE("specific fixed-rule values") {
  CHECK(approxRel(integrateFixed(*simplexRule(2, 2), [](const Vec&) { return 1.0; }), 0.5, 1e-14));
  CHECK(approxRel(integrateFixed(*simplexRule(3, 3),
                                 [](const Vec& r) { return r[0] * r[1] * r[2]; }),
                  1.0 / 720.0, 1e-12));
  CHECK(approxRel(integrateFixed(*simplexRule(1, 5),
                                 [](const Vec& r) { return std::pow(r[0], 5); }),
                  1.0 / 6.0, 1e-12));
}

TEST_CASE("recursive integration of non-polynomial integrands") {
  IntegratorConfig cfg; // relative 1e-5

  const auto s1 = integrateRecursive(1, [](const Vec& r) { return std::sqrt(r[0]); }, cfg);
  CHECK(approxRel(s1.value, 0.666666667, 1e-5));

  const auto s2 = integrateRecursive(2, [](const Vec& r) { return std::sqrt(r[0] * r[1]); }, cfg);
  CHECK(approxRel(s2.value, 0.130899694, 1e-5));

  const auto s3 = integrateRecursive(
      3, [](const Vec& r) { return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); }, cfg);
  CHECK(approxRel(s3.value, 0.0877136, 1e-4));
  CHECK(s3.convergenceOrder <= cfg.maxOrder);
}

TEST_CASE("matrix integrands integrate entry-wise") {
  std::mt19937 rng(43);
  for (int rep = 0; rep < 5; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    PolynomialMatrix m(dim, 2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = randomPolynomial(dim, 4, rng);

    IntegratorConfig cfg;
    cfg.relTolerance = 1e-10;
    const auto stat = integrateRecursive(dim, [&](const Vec& r) { return m.evaluate(r); }, cfg);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(approxRel(stat.value(i, j), m(i, j).integrateRefSimplex(), 1e-8, 1e-12));
  }
}

TEST_CASE("vector integrands evaluate once per point") {
  int calls = 0;
  IntegratorConfig cfg;
  const auto stat = integrateRecursive(2,
                                       [&](const Vec& r) {
                                         ++calls;
                                         return Vec{1.0, r[0]};
                                       },
                                       cfg);
  CHECK(approxRel(stat.value[0], 0.5, 1e-9));
  CHECK(approxRel(stat.value[1], 1.0 / 6.0, 1e-9));
  // one evaluation per point of each distinct rule visited by the ladder
  int expectedCalls = 0;
  int prevSize = -1;
  for (int o = 1; o <= stat.convergenceOrder; ++o) {
    const int s = simplexRule(2, o)->size();
    if (s == prevSize) continue;
    prevSize = s;
    expectedCalls += s;
  }
  CHECK(calls == expectedCalls);
}

TEST_CASE("estimates stop changing once the order covers the degree") {
  std::mt19937 rng(47);
  Polynomial p = randomPolynomial(2, 5, rng);
  const double exact = integrateFixed(*simplexRule(2, 5), [&](const Vec& r) { return p.evaluate(r); });
  for (int order = 5; order <= 12; ++order) {
    const double est = integrateFixed(*simplexRule(2, order), [&](const Vec& r) { return p.evaluate(r); });
    CHECK(approxRel(est, exact, 1e-12, 1e-14));
  }
}

TEST_CASE("norm selection changes the convergence measure but not the limit") {
  for (NormType nt : {NormType::L1, NormType::L2, NormType::Linf}) {
    IntegratorConfig cfg;
    cfg.normType = nt;
    cfg.relTolerance = 1e-7;
    const auto stat = integrateRecursive(2,
                                         [](const Vec& r) {
                                           return Vec{std::sqrt(r[0] * r[1]), r[0]};
                                         },
                                         cfg);
    CHECK(approxRel(stat.value[0], 0.130899694, 1e-5));
    CHECK(approxRel(stat.value[1], 1.0 / 6.0, 1e-6));
  }
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS((void)simplexRule(2, 62), Error);
  CHECK_THROWS_AS((void)simplexRule(0, 2), DimensionError);

  IntegratorConfig tight;
  tight.maxOrder = 3;
  tight.relTolerance = 1e-14;
  tight.absTolerance = 1e-16;
  try {
    (void)integrateRecursive(1, [](const Vec& r) { return std::sqrt(r[0]); }, tight);
    FAIL("expected non-convergence");
  } catch (const QuadratureNoConvergence<double>& e) {
    CHECK(e.best().convergenceOrder == 3);
    CHECK(approxRel(e.best().value, 2.0 / 3.0, 0.05)); // coarse but present
  }
}
