#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "curv/errors.hpp"
#include "curv/geometry.hpp"
#include "curv/refsimplex.hpp"
#include "testutil.hpp"

using namespace curv;
using curvtest::approxRel;
using curvtest::randomInterior;

namespace {

// Sample an analytic map on the interpolation grid of the given order.
template <class F>
CurvilinearGeometry fromMap(int mydim, int cdim, int order, F&& f, bool precompute = false) {
  std::vector<Vec> verts;
  for (const Vec& r : simplexGridCoordinates(mydim, order)) verts.push_back(f(r));
  return CurvilinearGeometry(mydim, cdim, order, std::move(verts), precompute);
}

} // namespace

TEST_CASE("local-to-global") {
  // straight edge from (0,0) to (2,3)
  CurvilinearGeometry edge(1, 2, 1, {Vec{0.0, 0.0}, Vec{2.0, 3.0}});
  const Vec mid = edge.global(Vec{0.5});
  CHECK(mid[0] == doctest::Approx(1.0));
  CHECK(mid[1] == doctest::Approx(1.5));

  // parabola (x, x^2), order 2
  auto par = fromMap(1, 2, 2, [](const Vec& r) { return Vec{r[0], r[0] * r[0]}; });
  const Vec p = par.global(Vec{0.5});
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-12));

  // corners map to corner vertices
  for (int order = 1; order <= 3; ++order) {
    auto tet = fromMap(3, 3, order, [](const Vec& r) {
      return Vec{r[0] + 0.1 * r[1] * r[1], r[1], r[2] + 0.05 * r[0] * r[0]};
    });
    const auto corners = tet.corners();
    for (int c = 0; c < 4; ++c) {
      const Vec img = tet.global(refsimplex::cornerCoordinate(3, c));
      CHECK((img - corners[c]).twoNorm() <= 1e-10);
    }
  }
}

TEST_CASE("jacobian and integration element") {
  auto edge = fromMap(1, 2, 1, [](const Vec& r) { return Vec{2 * r[0], 3 * r[0]}; });
  std::mt19937 rng(53);
  for (int k = 0; k < 5; ++k)
    CHECK(approxRel(edge.integrationElement(randomInterior(1, rng)), std::sqrt(13.0), 1e-12));

  auto tri = fromMap(2, 2, 2, [](const Vec& r) { return Vec{r[0] * r[0], r[1] * r[1]}; });
  for (int k = 0; k < 10; ++k) {
    const Vec r = randomInterior(2, rng);
    CHECK(approxRel(tri.integrationElement(r), 4 * r[0] * r[1], 1e-11, 1e-13));
  }

  auto ident = fromMap(3, 3, 1, [](const Vec& r) { return r; });
  CHECK(approxRel(ident.integrationElement(randomInterior(3, rng)), 1.0, 1e-13));

  // finite-difference check of the Jacobian
  auto curved = fromMap(3, 3, 3, [](const Vec& r) {
    return Vec{r[0] + 0.2 * r[1] * r[2], r[1] + 0.1 * r[0] * r[0], r[2] + 0.1 * r[1] * r[1] * r[1]};
  });
  const double h = 1e-6;
  for (int k = 0; k < 5; ++k) {
    const Vec r = randomInterior(3, rng);
    const Mat j = curved.jacobian(r);
    for (int i = 0; i < 3; ++i) {
      Vec rp = r, rm = r;
      rp[i] += h;
      rm[i] -= h;
      const Vec fd = (curved.global(rp) - curved.global(rm)) * (1.0 / (2 * h));
      for (int c = 0; c < 3; ++c) CHECK(approxRel(j(i, c), fd[c], 1e-6, 1e-8));
    }
  }
}

TEST_CASE("restrictive global-to-local") {
  auto edge = fromMap(1, 2, 1, [](const Vec& r) { return Vec{2 * r[0], 3 * r[0]}; });
  const LocalResult hit = edge.localRestrictive(Vec{1.0, 1.5}, 1e-10);
  REQUIRE(hit.found());
  CHECK((*hit.local)[0] == doctest::Approx(0.5).epsilon(1e-9));

  // far outside the image of [0,1] under (x, x^2): rejected early
  auto par = fromMap(1, 2, 2, [](const Vec& r) { return Vec{r[0], r[0] * r[0]}; });
  CHECK_FALSE(par.localRestrictive(Vec{10.0, 100.0}, 1e-8).found());

  // round trip over assorted curved geometries of orders 1..3
  std::mt19937 rng(59);
  auto roundTrip = [&](const CurvilinearGeometry& g) {
    for (int k = 0; k < 20; ++k) {
      const Vec r = randomInterior(g.mydim(), rng);
      const LocalResult res = g.localRestrictive(g.global(r), 1e-8);
      REQUIRE(res.found());
      CHECK((g.global(*res.local) - g.global(r)).twoNorm() <= 1e-8);
    }
  };
  roundTrip(fromMap(2, 2, 2, [](const Vec& r) {
    return Vec{r[0] + 0.2 * r[1] * r[1], r[1] - 0.1 * r[0] * r[0]};
  }));
  roundTrip(fromMap(3, 3, 3, [](const Vec& r) {
    return Vec{r[0] + 0.1 * r[1] * r[2], r[1] + 0.1 * r[2] * r[2], r[2] - 0.05 * r[0] * r[1]};
  }));
  roundTrip(fromMap(1, 1, 2, [](const Vec& r) { return Vec{r[0] + 0.3 * r[0] * r[0]}; }));
}

TEST_CASE("non-restrictive global-to-local") {
  auto sq = fromMap(1, 1, 2, [](const Vec& r) { return Vec{r[0] * r[0]}; });
  CHECK(sq.localNonRestrictive(Vec{4.0}, 1e-12)[0] == doctest::Approx(2.0).epsilon(1e-10));

  auto flat = fromMap(1, 2, 1, [](const Vec& r) { return Vec{r[0], 0.0}; });
  CHECK(flat.localNonRestrictive(Vec{0.5, 1.0}, 1e-12)[0] == doctest::Approx(0.5).epsilon(1e-10));

  auto par = fromMap(1, 2, 2, [](const Vec& r) { return Vec{r[0], r[0] * r[0]}; });
  CHECK(par.localNonRestrictive(Vec{0.5, 0.25}, 1e-12)[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("subentity geometries and normals") {
  auto tet = fromMap(3, 3, 1, [](const Vec& r) { return r; });

  // all four outward normals of the reference tetrahedron
  const Vec rf = refsimplex::center(2);
  const Vec n0 = tet.subentityNormal(0, rf);
  CHECK((n0 - Vec{0.0, 0.0, -1.0}).twoNorm() <= 1e-12);
  const Vec n3 = tet.subentityNormal(3, rf);
  const double s = 1.0 / std::sqrt(3.0);
  CHECK((n3 - Vec{s, s, s}).twoNorm() <= 1e-12);

  // subentity geometry vertices come from the matching grid subset
  auto tet2 = fromMap(3, 3, 2, [](const Vec& r) {
    return Vec{r[0], r[1] + 0.1 * r[0] * r[0], r[2]};
  });
  const CurvilinearGeometry face = tet2.subentityGeometry(1, 0);
  CHECK(face.mydim() == 2);
  CHECK(face.nVertices() == 6);
  std::mt19937 rng(61);
  for (int k = 0; k < 5; ++k) {
    const Vec rr = randomInterior(2, rng);
    // face 0 lies in the w=0 plane of the parent
    const Vec viaParent = tet2.global(Vec{rr[0], rr[1], 0.0});
    CHECK((face.global(rr) - viaParent).twoNorm() <= 1e-10);
  }

  // flat surface triangle embedded in 3D: tangent cross points along +z
  auto sheet = fromMap(2, 3, 1, [](const Vec& r) { return Vec{r[0], r[1], 0.0}; });
  const Vec ns = sheet.surfaceNormal(refsimplex::center(2));
  CHECK((ns - Vec{0.0, 0.0, 1.0}).twoNorm() <= 1e-12);

  CHECK_THROWS_AS((void)tet.subentityGeometry(1, 9), DimensionError);
}

TEST_CASE("exterior points are classified outside") {
  auto tet = fromMap(3, 3, 2, [](const Vec& r) {
    return Vec{r[0] + 0.05 * r[1] * r[1], r[1], r[2] + 0.05 * r[0] * r[0]};
  });
  double scale = 0;
  for (const Vec& c : tet.corners()) scale = std::max(scale, (c - tet.center()).twoNorm());
  const double alpha = 0.01 * scale;

  for (int face = 0; face < 4; ++face) {
    for (const Vec& rf : simplexGridCoordinates(2, 3)) {
      // skip points on the rim of the face where neighboring faces meet
      double sum = rf[0] + rf[1];
      if (rf[0] < 0.05 || rf[1] < 0.05 || sum > 0.95) continue;
      const auto faceGeom = tet.subentityGeometry(1, face);
      const Vec g = faceGeom.global(rf);
      const Vec n = tet.subentityNormal(face, rf);
      const Vec probe = g + alpha * n;
      CHECK_FALSE(tet.localRestrictive(probe, 1e-8).found());
    }
  }
}

TEST_CASE("entity-level integration weights by the integration element") {
  // scalar, against the closed form of int (1+2u) * sqrt(13) du
  auto edge = fromMap(1, 2, 1, [](const Vec& r) { return Vec{2 * r[0], 3 * r[0]}; });
  IntegratorConfig cfg;
  cfg.relTolerance = 1e-9;
  const auto scalar = edge.integrate([](const Vec& r) { return 1.0 + 2 * r[0]; }, cfg);
  CHECK(approxRel(scalar.value, 2.0 * std::sqrt(13.0), 1e-8));

  // vector integrand in one sweep
  const auto vec = edge.integrate([](const Vec& r) { return Vec{1.0, r[0]}; }, cfg);
  CHECK(approxRel(vec.value[0], std::sqrt(13.0), 1e-8));
  CHECK(approxRel(vec.value[1], std::sqrt(13.0) / 2, 1e-8));
}

TEST_CASE("volume") {
  auto tri = fromMap(2, 2, 1, [](const Vec& r) { return r; });
  CHECK(approxRel(tri.volume(1e-8), 0.5, 1e-8));

  auto par = fromMap(1, 2, 2, [](const Vec& r) { return Vec{r[0], r[0] * r[0]}; });
  CHECK(approxRel(par.volume(1e-8), 1.47894286, 1e-7));

  auto warped = fromMap(2, 3, 2, [](const Vec& r) {
    return Vec{r[0] * r[0], r[1] * r[1], r[0] * r[1]};
  });
  CHECK(approxRel(warped.volume(1e-7), 0.360858, 1e-6));
}

TEST_CASE("integration element keeps one sign on full-dimensional entities") {
  auto tet = fromMap(3, 3, 2, [](const Vec& r) {
    return Vec{r[0] + 0.1 * r[1] * r[1], r[1] + 0.1 * r[2] * r[2], r[2]};
  });
  const PolynomialMatrix& jp = tet.jacobianPoly();
  for (const Vec& r : simplexGridCoordinates(3, 9)) {
    Mat j = jp.evaluate(r);
    CHECK(j.det() > 0.0);
  }

  // the full-dimensional test maps, sampled on a 10^mydim grid
  auto signConstant = [](const CurvilinearGeometry& g) {
    int pos = 0, neg = 0;
    for (const Vec& r : simplexGridCoordinates(g.mydim(), 10)) {
      const double d = g.jacobianPoly().evaluate(r).det();
      if (d > 1e-14) ++pos;
      if (d < -1e-14) ++neg;
    }
    return pos == 0 || neg == 0;
  };
  CHECK(signConstant(fromMap(1, 1, 1, [](const Vec& r) { return Vec{1 + 2 * r[0]}; })));
  CHECK(signConstant(fromMap(1, 1, 2, [](const Vec& r) { return Vec{r[0] * r[0]}; })));
  CHECK(signConstant(fromMap(2, 2, 2, [](const Vec& r) {
    return Vec{r[0] * r[0], r[1] * r[1]};
  })));
  CHECK(signConstant(fromMap(2, 2, 1, [](const Vec& r) {
    return Vec{1 + r[0], r[0] + r[1]};
  })));
  CHECK(signConstant(fromMap(3, 3, 2, [](const Vec& r) {
    return Vec{r[0] * r[0], r[1] * r[1], r[2] * r[2]};
  })));
  CHECK(signConstant(fromMap(3, 3, 1, [](const Vec& r) {
    return Vec{r[0] + r[1], r[1] + r[2], r[0] + r[2]};
  })));
}

TEST_CASE("cached geometry behaves identically") {
  auto plain = fromMap(3, 3, 2, [](const Vec& r) {
    return Vec{r[0] + 0.1 * r[1] * r[1], r[1], r[2] + 0.2 * r[0] * r[1]};
  });
  auto cached = fromMap(3, 3, 2, [](const Vec& r) {
    return Vec{r[0] + 0.1 * r[1] * r[1], r[1], r[2] + 0.2 * r[0] * r[1]};
  }, true);
  std::mt19937 rng(67);
  for (int k = 0; k < 20; ++k) {
    const Vec r = randomInterior(3, rng);
    CHECK((plain.global(r) - cached.global(r)).twoNorm() == 0.0);
    CHECK(plain.integrationElement(r) == doctest::Approx(cached.integrationElement(r)).epsilon(1e-15));
  }
}

TEST_CASE("non-restrictive search reports unreachable targets") {
  // p(r) = r^2 has no real preimage of -1; the iteration walks into the
  // singular point or diverges and must say so
  auto sq = fromMap(1, 1, 2, [](const Vec& r) { return Vec{r[0] * r[0]}; });
  CHECK_THROWS_AS((void)sq.localNonRestrictive(Vec{-1.0}, 1e-12), ConvergenceError);
}

TEST_CASE("geometry constructor validation") {
  CHECK_THROWS_AS(CurvilinearGeometry(2, 2, 2, std::vector<Vec>(5, Vec(2))), DimensionError);
  CHECK_THROWS_AS(CurvilinearGeometry(3, 2, 1, std::vector<Vec>(4, Vec(2))), DimensionError);
}
