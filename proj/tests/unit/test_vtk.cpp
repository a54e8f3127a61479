#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "curv/lagrange.hpp"
#include "curv/vtkwriter.hpp"
#include "xmlcheck.hpp"

using namespace curv;
using curvtest::xmlWellFormed;

namespace {

std::string fixture(const std::string& name) { return std::string(CURV_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
CurvilinearGeometry fromMap(int mydim, int cdim, int order, F&& f) {
  std::vector<Vec> verts;
  for (const Vec& r : simplexGridCoordinates(mydim, order)) verts.push_back(f(r));
  return CurvilinearGeometry(mydim, cdim, order, std::move(verts));
}

} // namespace

TEST_CASE("sub-simplex decomposition arithmetic") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(CurvVtkWriter::subSimplices(1, n).size() == static_cast<size_t>(n));
    CHECK(CurvVtkWriter::subSimplices(2, n).size() == static_cast<size_t>(n * n));
    CHECK(CurvVtkWriter::subSimplices(3, n).size() == static_cast<size_t>(n * n * n));
  }

  // every node is used, no cell repeats a vertex
  for (int dim = 1; dim <= 3; ++dim)
    for (int n = 1; n <= 4; ++n) {
      const auto cells = CurvVtkWriter::subSimplices(dim, n);
      std::set<int> used;
      for (const auto& cell : cells) {
        std::set<int> inCell;
        for (int c = 0; c <= dim; ++c) {
          CHECK(cell[c] >= 0);
          CHECK(cell[c] < simplexNodeCount(dim, n));
          inCell.insert(cell[c]);
        }
        CHECK(static_cast<int>(inCell.size()) == dim + 1);
        used.insert(inCell.begin(), inCell.end());
      }
      CHECK(static_cast<int>(used.size()) == simplexNodeCount(dim, n));
    }
}

TEST_CASE("sub-tetrahedra tile the reference volume") {
  for (int n = 2; n <= 4; ++n) {
    const auto nodes = simplexGridCoordinates(3, n);
    double vol = 0;
    for (const auto& cell : CurvVtkWriter::subSimplices(3, n)) {
      const Vec a = nodes[cell[1]] - nodes[cell[0]];
      const Vec b = nodes[cell[2]] - nodes[cell[0]];
      const Vec c = nodes[cell[3]] - nodes[cell[0]];
      Mat m(3, 3);
      for (int d = 0; d < 3; ++d) {
        m(0, d) = a[d];
        m(1, d) = b[d];
        m(2, d) = c[d];
      }
      vol += std::abs(m.det()) / 6.0;
    }
    CHECK(vol == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  }
}

TEST_CASE("single entities accumulate the expected counts") {
  WriterOptions opts;
  opts.interpolate = true;

  CurvVtkWriter w1(3);
  auto tri1 = fromMap(2, 3, 1, [](const Vec& r) { return Vec{r[0], r[1], 0.0}; });
  w1.addEntity(tri1, {1, 0, 0}, opts);
  CHECK(w1.cellCount() == 1);
  CHECK(w1.pointCount() == 3);

  CurvVtkWriter w2(3);
  auto tri2 = fromMap(2, 3, 2, [](const Vec& r) {
    return Vec{r[0], r[1], 0.1 * r[0] * r[1]};
  });
  w2.addEntity(tri2, {1, 0, 0}, opts);
  CHECK(w2.cellCount() == 4); // order-2 grid: n^2 with n = 2
  CHECK(w2.pointCount() == 6);

  // manual refinement via nDiscretizationPoint
  WriterOptions manual;
  manual.interpolate = false;
  manual.nDiscretizationPoint = 5; // n = 4
  CurvVtkWriter w3(3);
  auto tet = fromMap(3, 3, 1, [](const Vec& r) { return r; });
  w3.addEntity(tet, {1, 0, 0}, manual);
  CHECK(w3.cellCount() == 64);
  CHECK(w3.pointCount() == simplexNodeCount(3, 4));
}

TEST_CASE("vtu output is well-formed and counts match") {
  WriterOptions opts;
  opts.fixedVirtualRefinement = 3;
  CurvVtkWriter w(3);
  auto tet = fromMap(3, 3, 2, [](const Vec& r) {
    return Vec{r[0] + 0.05 * r[1] * r[1], r[1], r[2]};
  });
  w.addEntity(tet, {7, 0, 0}, opts);
  CHECK(w.cellCount() == 27);
  w.writeVtu("/tmp/curvtest_single.vtu");
  std::string err;
  CHECK_MESSAGE(xmlWellFormed("/tmp/curvtest_single.vtu", &err), err);
  const std::string text = slurp("/tmp/curvtest_single.vtu");
  CHECK(text.find("NumberOfCells=\"27\"") != std::string::npos);
  CHECK(text.find("physicalTag") != std::string::npos);
  CHECK(text.find("partitionType") != std::string::npos);
  CHECK(text.find("\"rank\"") != std::string::npos);
}

TEST_CASE("explode zero is a bit-exact no-op") {
  auto tet = fromMap(3, 3, 2, [](const Vec& r) {
    return Vec{r[0], r[1] + 0.1 * r[0] * r[0], r[2]};
  });
  WriterOptions plain;
  WriterOptions zero;
  zero.explode = 0.0;
  WriterOptions shifted;
  shifted.explode = 0.25;

  CurvVtkWriter a(3), b(3), c(3);
  a.addEntity(tet, {1, 0, 0}, plain);
  b.addEntity(tet, {1, 0, 0}, zero);
  c.addEntity(tet, {1, 0, 0}, shifted);
  a.writeVtu("/tmp/curvtest_a.vtu");
  b.writeVtu("/tmp/curvtest_b.vtu");
  c.writeVtu("/tmp/curvtest_c.vtu");
  CHECK(slurp("/tmp/curvtest_a.vtu") == slurp("/tmp/curvtest_b.vtu"));
  CHECK(slurp("/tmp/curvtest_a.vtu") != slurp("/tmp/curvtest_c.vtu"));
}

TEST_CASE("base64 arrays are accepted") {
  WriterOptions opts;
  CurvVtkWriter w(3);
  w.addEntity(fromMap(3, 3, 1, [](const Vec& r) { return r; }), {1, 0, 0}, opts);
  w.writeVtu("/tmp/curvtest_b64.vtu", true);
  std::string err;
  CHECK_MESSAGE(xmlWellFormed("/tmp/curvtest_b64.vtu", &err), err);
  CHECK(slurp("/tmp/curvtest_b64.vtu").find("format=\"binary\"") != std::string::npos);
}

TEST_CASE("magnify scales boundary entities about the origin") {
  auto tri = fromMap(2, 3, 1, [](const Vec& r) { return Vec{1 + r[0], r[1], 0.0}; });
  WriterOptions opts;
  opts.magnify = 2.0;
  CurvVtkWriter boundary(3), interior(3);
  boundary.addEntity(tri, {0, 0, 0}, opts, true);
  interior.addEntity(tri, {0, 0, 0}, opts, false);
  boundary.writeVtu("/tmp/curvtest_mag_b.vtu");
  interior.writeVtu("/tmp/curvtest_mag_i.vtu");
  const std::string b = slurp("/tmp/curvtest_mag_b.vtu");
  const std::string i = slurp("/tmp/curvtest_mag_i.vtu");
  CHECK(b != i);                                 // boundary entities move
  CHECK(i.find(" 1 ") != std::string::npos);     // interior keeps x = 1
  CHECK(b.find(" 2 ") != std::string::npos);     // boundary corner lands at x = 2
}

TEST_CASE("option validation") {
  WriterOptions opts;
  CurvVtkWriter w(3);
  auto tri = fromMap(2, 3, 1, [](const Vec& r) { return Vec{r[0], r[1], 0.0}; });
  opts.explode = 1.5;
  CHECK_THROWS_AS(w.addEntity(tri, {0, 0, 0}, opts), DimensionError);
  opts.explode = 0.0;
  opts.magnify = -1.0;
  CHECK_THROWS_AS(w.addEntity(tri, {0, 0, 0}, opts), DimensionError);
  opts.magnify = 0.0;
  opts.interpolate = false;
  opts.nDiscretizationPoint = 1;
  CHECK_THROWS_AS(w.addEntity(tri, {0, 0, 0}, opts), DimensionError);

  CurvVtkWriter dup(3);
  dup.declareField("f", 1);
  CHECK_THROWS_AS(dup.declareField("f", 3), Error);
}

namespace {

struct ElementIndexField final : FieldFunctor {
  int current = 0;
  std::string name() const override { return "elementIndex"; }
  int codim() const override { return 0; }
  int components() const override { return 1; }
  void init(const CurvGrid&, int localIndex) override { current = localIndex; }
  Vec evaluate(const Vec&) const override { return Vec{static_cast<double>(current)}; }
};

struct GlobalSinusoidField final : FieldFunctor {
  const CurvGrid* grid = nullptr;
  CurvilinearGeometry geom;
  std::string name() const override { return "globalSinusoid"; }
  int codim() const override { return 0; }
  int components() const override { return 3; }
  void init(const CurvGrid& g, int localIndex) override {
    grid = &g;
    geom = g.storage().elementGeometry(localIndex);
  }
  Vec evaluate(const Vec& local) const override {
    const Vec x = geom.global(local);
    return Vec{std::sin(x[0] + x[1]), std::cos(x[1] + x[2]), std::sin(x[2] + x[0])};
  }
};

} // namespace

TEST_CASE("grid writer produces one piece per rank plus a master") {
  runSimulated(2, [](Communicator& comm) {
    RcbPartitioner rcb;
    CurvGridFactory factory(comm, true, true);
    (void)readMesh(fixture("twotet1.msh"), comm, rcb, factory);
    auto grid = factory.releaseGrid();

    CurvVtkGridWriter writer(*grid);
    writer.options().writeCodim = {true, true, false, false};
    writer.addField(std::make_shared<ElementIndexField>());
    writer.addField(std::make_shared<GlobalSinusoidField>());
    writer.useFixedVirtualRefinement(4);
    writer.write("/tmp", "curvtest_grid");
    comm.barrier();
  });
  std::string err;
  CHECK_MESSAGE(xmlWellFormed("/tmp/curvtest_grid_p0000.vtu", &err), err);
  CHECK_MESSAGE(xmlWellFormed("/tmp/curvtest_grid_p0001.vtu", &err), err);
  CHECK_MESSAGE(xmlWellFormed("/tmp/curvtest_grid.pvtu", &err), err);
  const std::string master = slurp("/tmp/curvtest_grid.pvtu");
  CHECK(master.find("curvtest_grid_p0000.vtu") != std::string::npos);
  CHECK(master.find("curvtest_grid_p0001.vtu") != std::string::npos);
  int pieces = 0;
  for (std::size_t at = master.find("<Piece"); at != std::string::npos;
       at = master.find("<Piece", at + 1))
    ++pieces;
  CHECK(pieces == 2);
}

TEST_CASE("a global field is continuous across element boundaries") {
  runSimulated(1, [](Communicator& comm) {
    RcbPartitioner rcb;
    CurvGridFactory factory(comm, true, true);
    (void)readMesh(fixture("twotet1.msh"), comm, rcb, factory);
    auto grid = factory.releaseGrid();

    // sample the sinusoid on both elements at the shared-face refinement
    // points and compare the values from either side
    GlobalSinusoidField field;
    const GridStorage& s = grid->storage();
    const int shared = s.subset(1, PartitionKind::Interior)[0];
    const FaceRec& f = s.faces[shared];

    const auto nodesFace = simplexGridCoordinates(2, 4);
    std::map<std::array<long, 3>, Vec> seen;
    for (int side = 0; side < 2; ++side) {
      const int elem = side == 0 ? f.parentElement : s.faceSecondParent(shared);
      field.init(*grid, elem);
      const auto geomE = s.elementGeometry(elem);
      // locate the face point in the element: use the global position key
      const auto geomF = s.entityGeometry(1, shared);
      for (const Vec& rf : nodesFace) {
        const Vec x = geomF.global(rf);
        std::array<long, 3> key;
        for (int d = 0; d < 3; ++d) key[d] = std::lround(x[d] * 1e9);
        const LocalResult local = geomE.localRestrictive(x, 1e-10);
        REQUIRE(local.found());
        const Vec v = field.evaluate(*local.local);
        const auto it = seen.find(key);
        if (it == seen.end())
          seen[key] = v;
        else
          CHECK((v - it->second).twoNorm() <= 1e-9);
      }
    }
  });
}

TEST_CASE("element index field is piecewise constant") {
  runSimulated(1, [](Communicator& comm) {
    RcbPartitioner rcb;
    CurvGridFactory factory(comm, true, true);
    (void)readMesh(fixture("cube6.msh"), comm, rcb, factory);
    auto grid = factory.releaseGrid();

    CurvVtkGridWriter writer(*grid);
    writer.addField(std::make_shared<ElementIndexField>());
    writer.write("/tmp", "curvtest_idx");
    comm.barrier();
  });
  const std::string text = slurp("/tmp/curvtest_idx_p0000.vtu");
  CHECK(text.find("elementIndex") != std::string::npos);
}
