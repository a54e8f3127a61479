#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curv/errors.hpp"
#include "curv/poly.hpp"
#include "curv/quadrature.hpp"
#include "testutil.hpp"

using namespace curv;
using curvtest::approxRel;
using curvtest::randomInterior;
using curvtest::randomPolynomial;

namespace {

Polynomial u1() { return Polynomial::variable(1, 0); }

} // namespace

TEST_CASE("arithmetic basics") {
  // (x + 1) * (x - 1) == x^2 - 1
  Polynomial a = u1() + 1.0;
  Polynomial b = u1() - 1.0;
  Polynomial prod = a * b;
  Polynomial expected = u1() * u1() - 1.0;
  CHECK(prod.sameMonomials(expected, 0.0));
  CHECK(prod.order() == 2);

  // axpy with zero scale is the identity
  std::mt19937 rng(7);
  Polynomial p = randomPolynomial(2, 4, rng);
  Polynomial q = randomPolynomial(2, 4, rng);
  Polynomial r = p;
  r.axpy(q, 0.0);
  CHECK(r.sameMonomials(p, 0.0));

  // (2xy) * (3x^2) == 6 x^3 y
  Polynomial m1(2, Monomial(2.0, {1, 1}));
  Polynomial m2(2, Monomial(3.0, {2, 0}));
  Polynomial m = m1 * m2;
  CHECK(m.monomials().size() == 1);
  CHECK(m.monomials()[0].prefactor == 6.0);
  CHECK(m.monomials()[0].powers == std::vector<int>{3, 1});
}

TEST_CASE("multiplication adds orders") {
  std::mt19937 rng(11);
  for (int it = 0; it < 20; ++it) {
    Polynomial p = randomPolynomial(3, 3, rng);
    Polynomial q = randomPolynomial(3, 4, rng);
    if (p.isZero() || q.isZero()) continue;
    CHECK((p * q).order() <= p.order() + q.order());
  }
}

TEST_CASE("derivative") {
  Polynomial x2y(2, Monomial(1.0, {2, 1}));
  Polynomial d = x2y.derivative(0);
  Polynomial expected(2, Monomial(2.0, {1, 1}));
  CHECK(d.sameMonomials(expected, 0.0));

  Polynomial x2(2, Monomial(1.0, {2, 0}));
  CHECK(x2.derivative(1).isZero());
  CHECK(x2.derivative(1).order() == 0);

  // d/dx (x^3 - 3x + 3) == 3x^2 - 3, checked against central differences
  Polynomial p(1, Monomial(1.0, {3}));
  p += Monomial(-3.0, {1});
  p += Monomial(3.0, {0});
  Polynomial dp = p.derivative(0);
  std::mt19937 rng(3);
  const double h = 1e-6;
  for (int i = 0; i < 10; ++i) {
    Vec r = randomInterior(1, rng);
    Vec rp = r, rm = r;
    rp[0] += h;
    rm[0] -= h;
    const double fd = (p.evaluate(rp) - p.evaluate(rm)) / (2 * h);
    CHECK(approxRel(dp.evaluate(r), fd, 1e-8, 1e-9));
  }

  CHECK_THROWS_AS((void)p.derivative(1), DimensionError);
}

TEST_CASE("evaluate") {
  Polynomial p(2, Monomial(1.0, {2, 0}));
  p += Monomial(1.0, {0, 1});
  CHECK(p.evaluate(Vec{2.0, 3.0}) == 7.0);

  CHECK(Polynomial(3).evaluate(Vec{0.1, 0.2, 0.3}) == 0.0);

  Polynomial q(1, Monomial(1.0, {0}));
  q += Monomial(2.0, {1});
  q += Monomial(3.0, {2});
  CHECK(q.evaluate(Vec{0.5}) == doctest::Approx(2.75).epsilon(1e-15));

  CHECK_THROWS_AS((void)p.evaluate(Vec{1.0}), DimensionError);
}

TEST_CASE("integrateRefSimplex closed forms") {
  // x y^2 over the reference triangle
  Polynomial xyy(2, Monomial(1.0, {1, 2}));
  CHECK(approxRel(xyy.integrateRefSimplex(), 1.0 / 60.0, 1e-14));

  // constant over the reference tetrahedron
  CHECK(approxRel(Polynomial::constant(3, 1.0).integrateRefSimplex(), 1.0 / 6.0, 1e-14));

  // x^3 - 3x + 3 over [0,1]
  Polynomial p(1, Monomial(1.0, {3}));
  p += Monomial(-3.0, {1});
  p += Monomial(3.0, {0});
  CHECK(approxRel(p.integrateRefSimplex(), 1.75, 1e-14));
}

TEST_CASE("order, magnitude, toString, cache") {
  Polynomial p(2, Monomial(1.0, {2, 1}));
  p += Monomial(1.0, {1, 0});
  CHECK(p.order() == 3);

  Polynomial q(1, Monomial(-5.0, {1}));
  q += Monomial(2.0, {0});
  CHECK(q.magnitude() == 5.0);

  CHECK(Polynomial(2).order() == 0);
  CHECK(Polynomial(2).magnitude() == 0.0);
  CHECK(Polynomial(2).toString() == "0");
  CHECK(q.toString().find('u') != std::string::npos);

  // cached evaluation is bit-identical
  std::mt19937 rng(23);
  Polynomial r = randomPolynomial(3, 6, rng, 10);
  Polynomial rc = r.cache();
  for (int i = 0; i < 100; ++i) {
    Vec v = randomInterior(3, rng);
    CHECK(r.evaluate(v) == rc.evaluate(v));
  }
}

TEST_CASE("ring axioms after canonicalization") {
  std::mt19937 rng(5);
  for (int it = 0; it < 30; ++it) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    Polynomial a = randomPolynomial(dim, 3, rng);
    Polynomial b = randomPolynomial(dim, 3, rng);
    Polynomial c = randomPolynomial(dim, 2, rng);

    CHECK((a + b).sameMonomials(b + a, 0.0));
    CHECK(((a + b) + c).sameMonomials(a + (b + c), 1e-13));
    CHECK((a * b).sameMonomials(b * a, 1e-13));
    CHECK(((a * b) * c).sameMonomials(a * (b * c), 1e-12));
    CHECK((a * (b + c)).sameMonomials(a * b + a * c, 1e-12));
  }
}

TEST_CASE("integral is additive and matches quadrature") {
  std::mt19937 rng(17);
  for (int it = 0; it < 50; ++it) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    Polynomial a = randomPolynomial(dim, 4, rng);
    Polynomial b = randomPolynomial(dim, 4, rng);
    const double ia = a.integrateRefSimplex();
    const double ib = b.integrateRefSimplex();
    const double iab = (a + b).integrateRefSimplex();
    CHECK(approxRel(iab, ia + ib, 1e-14, 1e-15));
  }

  // agreement with the adaptive quadrature on random polynomials
  for (int it = 0; it < 50; ++it) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const int order = 1 + static_cast<int>(rng() % 8);
    Polynomial p = randomPolynomial(dim, order, rng);
    IntegratorConfig cfg;
    cfg.relTolerance = 1e-12;
    cfg.absTolerance = 1e-13;
    const auto stat = integrateRecursive(dim, [&](const Vec& r) { return p.evaluate(r); }, cfg);
    CHECK(approxRel(stat.value, p.integrateRefSimplex(), 1e-9, 1e-12));
  }
}

TEST_CASE("dimension mismatch is rejected") {
  Polynomial a(2), b(3);
  CHECK_THROWS_AS(a += b, DimensionError);
  CHECK_THROWS_AS(a *= b, DimensionError);
  CHECK_THROWS_AS(a.axpy(b, 2.0), DimensionError);
  CHECK_THROWS_AS(a += Monomial(1.0, {1}), DimensionError);
}
