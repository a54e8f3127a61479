// curvtool: reads a curvilinear GMSH mesh on a set of simulated ranks,
// builds the distributed grid and runs diagnostics or one of the
// verification computations on it.

#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "curv/boundarycontainer.hpp"
#include "curv/datahandle.hpp"
#include "curv/gmshreader.hpp"
#include "curv/grid.hpp"
#include "curv/paralleldata.hpp"
#include "curv/surfaceintegrals.hpp"
#include "curv/vtkwriter.hpp"

using namespace curv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitConvergence = 4;
constexpr int kExitIo = 5;

struct Options {
  std::string mesh;
  int ranks = 1;
  std::string ghosts = "on";
  std::string useGmshIndex = "on";
  std::string vtuOut;
  int refine = 0;
  double explode = 0.0;
  std::string codimMask = "1000";
  std::string test = "diagnostics";
  std::vector<std::string> charges;
  int surfaceTag = -1;
  int volumeTag = -1;
  std::string outFile = "sorted.txt";
  double relTol = 1e-5;
  double absTol = 1e-10;
};

Vec parseCharge(const std::string& text) {
  std::istringstream is(text);
  double x, y, z;
  char c1, c2;
  if (!(is >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
    throw CLI::ValidationError("--charge expects 'x,y,z'");
  return Vec{x, y, z};
}

/// Per-rank report lines, printed rank-major after the simulated run.
class Report {
public:
  explicit Report(int nRanks) : lines_(nRanks) {}
  std::ostringstream& rank(int r) { return lines_[r]; }
  std::ostringstream& shared() { return shared_; } // rank 0 only
  void print() const {
    for (const auto& os : lines_) std::cout << os.str();
    std::cout << shared_.str();
  }

private:
  std::vector<std::ostringstream> lines_;
  std::ostringstream shared_;
};

std::shared_ptr<CurvGrid> buildGrid(Communicator& comm, const Options& opt, TimingLog& timing) {
  CurvGridFactory factory(comm, opt.ghosts == "on", opt.useGmshIndex == "on");
  RcbPartitioner partitioner;
  ReadOptions ro;
  ro.timing = &timing;
  (void)readMesh(opt.mesh, comm, partitioner, factory, ro);
  auto grid = factory.releaseGrid();
  for (const auto& [name, seconds] : timing.entries()) grid->timings().add(name, seconds);
  return grid;
}

void maybeWriteVtu(const CurvGrid& grid, const Options& opt) {
  if (opt.vtuOut.empty()) return;
  CurvVtkGridWriter writer(grid);
  if (opt.refine > 0) writer.useFixedVirtualRefinement(opt.refine);
  writer.options().explode = opt.explode;
  for (std::size_t c = 0; c < 4 && c < opt.codimMask.size(); ++c)
    writer.options().writeCodim[c] = opt.codimMask[c] == '1';
  writer.write(opt.vtuOut, "grid");
}

Vec meshCentroid(const CurvGrid& grid) {
  const GridStorage& s = grid.storage();
  Vec sum(s.worldDim);
  double count = 0;
  for (const VertexRec& v : s.vertices) {
    if (v.kind == PartitionKind::Ghost) continue;
    sum += v.position;
    count += 1;
  }
  std::vector<double> payload(static_cast<std::size_t>(s.worldDim) + 1);
  for (int d = 0; d < s.worldDim; ++d) payload[d] = sum[d];
  payload[s.worldDim] = count;
  std::vector<int> lens;
  const auto all = allGather(grid.comm(), payload, lens, 80);
  Vec total(s.worldDim);
  double n = 0;
  for (std::size_t i = 0; i < all.size(); i += s.worldDim + 1) {
    for (int d = 0; d < s.worldDim; ++d) total[d] += all[i + d];
    n += all[i + s.worldDim];
  }
  return total * (1.0 / n);
}

void runDiagnostics(Communicator& comm, const Options& opt, Report& report) {
  TimingLog timing;
  auto grid = buildGrid(comm, opt, timing);
  const GridStorage& s = grid->storage();
  auto& os = report.rank(comm.rank());

  const int nGhost = static_cast<int>(s.elements.size()) - s.nInteriorElements;
  os << "rank " << comm.rank() << ": elements " << s.nInteriorElements << ", ghosts " << nGhost
     << ", process-boundary faces " << s.subset(1, PartitionKind::ProcessBoundary).size()
     << ", domain-boundary faces " << s.subset(1, PartitionKind::DomainBoundary).size()
     << ", vertices " << s.vertices.size() << ", memory [kB] " << currentMemoryKb() << "\n";

  double vmin = 1e300, vmax = 0, vsum = 0;
  for (int e = 0; e < s.nInteriorElements; ++e) {
    const double v = s.elementGeometry(e).volume(1e-6);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    vsum += v;
  }
  if (s.nInteriorElements > 0)
    os << "rank " << comm.rank() << ": element volume min " << vmin << " avg "
       << vsum / s.nInteriorElements << " max " << vmax << "\n";

  const double total = sumOverRanks(comm, vsum);
  maybeWriteVtu(*grid, opt);
  const std::string table = grid->timings().reportParallel(comm);
  if (comm.rank() == 0) {
    report.shared() << "total volume = " << total << "\n" << table;
  }
}

void runGauss(Communicator& comm, const Options& opt, Report& report) {
  TimingLog timing;
  auto grid = buildGrid(comm, opt, timing);
  std::vector<Vec> charges;
  for (const auto& text : opt.charges) charges.push_back(parseCharge(text));
  if (charges.empty()) charges.push_back(meshCentroid(*grid));

  const bool domain = opt.surfaceTag < 0;
  const auto faces = orientedLocalSurface(*grid, domain, opt.surfaceTag, opt.volumeTag);
  for (const Vec& q : charges) {
    const double local = chargeFluxLocal(faces, q, opt.relTol, opt.absTol);
    const double flux = sumOverRanks(comm, local);
    if (comm.rank() == 0) {
      const double fourPi = 4.0 * M_PI;
      report.shared() << "charge (" << q[0] << ", " << q[1] << ", " << q[2] << "): flux = " << flux
                      << ", flux/4pi = " << flux / fourPi << "\n";
    }
  }
}

void runNormal(Communicator& comm, const Options& opt, Report& report) {
  TimingLog timing;
  auto grid = buildGrid(comm, opt, timing);
  const bool domain = opt.surfaceTag < 0;
  const auto faces = orientedLocalSurface(*grid, domain, opt.surfaceTag, opt.volumeTag);
  const Vec local = normalIntegralLocal(faces, opt.relTol);
  const Vec total = sumOverRanks(comm, local);
  const double area = sumOverRanks(comm, surfaceAreaLocal(faces, opt.relTol));
  if (comm.rank() == 0)
    report.shared() << "normal integral = (" << total[0] << ", " << total[1] << ", " << total[2]
                    << "), |integral| = " << total.twoNorm() << ", surface area = " << area << "\n";
}

struct EchoHandle final : DataHandle<GlobalIndex> {
  const CurvGrid& grid;
  long received = 0;
  explicit EchoHandle(const CurvGrid& g) : grid(g) {}
  int size(int, int) const override { return 1; }
  void gather(int c, int i, std::vector<GlobalIndex>& buf) const override {
    buf.push_back(grid.storage().globalIndex(c, i));
  }
  void scatter(int c, int i, int, const GlobalIndex* data, int n) override {
    if (n != 1 || data[0] != grid.storage().globalIndex(c, i))
      throw ProtocolError("global index mismatch in data-handle echo");
    ++received;
  }
};

void runDataHandle(Communicator& comm, const Options& opt, Report& report) {
  TimingLog timing;
  auto grid = buildGrid(comm, opt, timing);
  auto& os = report.rank(comm.rank());
  const struct {
    CommInterface iface;
    CommDirection dir;
    const char* name;
  } protocols[] = {
      {CommInterface::InteriorBorderInteriorBorder, CommDirection::Forward, "interior-border <-> interior-border"},
      {CommInterface::InteriorBorderAll, CommDirection::Forward, "interior-border -> all"},
      {CommInterface::InteriorBorderAll, CommDirection::Backward, "all -> interior-border"},
      {CommInterface::AllAll, CommDirection::Forward, "all <-> all"},
  };
  for (const auto& p : protocols) {
    long total = 0;
    for (int codim = 0; codim < grid->storage().nCodims(); ++codim) {
      EchoHandle handle(*grid);
      communicate(*grid, handle, p.iface, p.dir, codim);
      total += handle.received;
    }
    os << "rank " << comm.rank() << ": " << p.name << ": " << total
       << " entity instances echoed their global index\n";
  }
}

void runSorted(Communicator& comm, const Options& opt, Report& report) {
  TimingLog timing;
  auto grid = buildGrid(comm, opt, timing);
  const GridStorage& s = grid->storage();
  std::vector<int> nDof(s.nInteriorElements, 1);
  std::vector<double> volumes;
  for (int e = 0; e < s.nInteriorElements; ++e)
    volumes.push_back(s.elementGeometry(e).volume(1e-8));
  writeSortedParallelData(*grid, nDof, volumes, opt.outFile);
  if (comm.rank() == 0)
    report.shared() << "wrote " << opt.outFile << " sorted by element global index\n";
}

void runBoundary(Communicator& comm, const Options& opt, Report& report) {
  TimingLog timing;
  auto grid = buildGrid(comm, opt, timing);
  const bool domain = opt.surfaceTag < 0;
  GlobalBoundaryContainer container(*grid, domain, opt.volumeTag, opt.surfaceTag);
  auto& os = report.rank(comm.rank());
  os << "rank " << comm.rank() << ": local faces " << container.localFaces().size()
     << ", collected faces " << container.size() << "\n";

  // closed-surface identity over local + collected faces
  IntegratorConfig cfg;
  cfg.relTolerance = opt.relTol;
  const GridStorage& s = grid->storage();
  const auto local = orientedLocalSurface(*grid, domain, opt.surfaceTag, opt.volumeTag,
                                          /*dedupeShared=*/false);
  Vec total = normalIntegralLocal(local, opt.relTol);
  double area = surfaceAreaLocal(local, opt.relTol);
  for (const RemoteBoundaryFace& f : container) {
    const auto geom = f.geometry(s.worldDim);
    const auto stat = integrateRecursive(
        geom.mydim(), [&](const Vec& r) { return geom.surfaceNormal(r) * f.orientation; }, cfg);
    total += stat.value;
    area += geom.volume(opt.relTol);
  }
  os << "rank " << comm.rank() << ": full-surface normal integral |.| = " << total.twoNorm()
     << " over area " << area << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvilinear grid diagnostics and verification driver"};
  Options opt;
  app.add_option("--mesh", opt.mesh, "GMSH v2 ascii mesh file")->required();
  app.add_option("--ranks", opt.ranks, "number of simulated ranks")->check(CLI::PositiveNumber);
  app.add_option("--ghosts", opt.ghosts, "construct ghost elements (on|off)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--use-gmsh-index", opt.useGmshIndex,
                 "reuse the element index from the mesh file (on|off)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--vtu-out", opt.vtuOut, "directory for VTU/PVTU output");
  app.add_option("--refine", opt.refine, "fixed virtual refinement order");
  app.add_option("--explode", opt.explode, "shrink written entities toward their centers");
  app.add_option("--codim", opt.codimMask, "codimension mask for VTU output, e.g. 1100");
  app.add_option("--test", opt.test, "diagnostics|gauss|normal|datahandle|sorted|boundary")
      ->check(CLI::IsMember({"diagnostics", "gauss", "normal", "datahandle", "sorted", "boundary"}));
  app.add_option("--charge", opt.charges, "charge position 'x,y,z' (repeatable)");
  app.add_option("--surface-tag", opt.surfaceTag, "interior surface physical tag");
  app.add_option("--volume-tag", opt.volumeTag, "tag of the volume on the inside of the surface");
  app.add_option("--out", opt.outFile, "output file for --test sorted");
  app.add_option("--rel-tol", opt.relTol, "relative integration tolerance");
  app.add_option("--abs-tol", opt.absTol, "absolute integration tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report report(opt.ranks);
  try {
    runSimulated(opt.ranks, [&](Communicator& comm) {
      if (opt.test == "diagnostics") runDiagnostics(comm, opt, report);
      else if (opt.test == "gauss") runGauss(comm, opt, report);
      else if (opt.test == "normal") runNormal(comm, opt, report);
      else if (opt.test == "datahandle") runDataHandle(comm, opt, report);
      else if (opt.test == "sorted") runSorted(comm, opt, report);
      else if (opt.test == "boundary") runBoundary(comm, opt, report);
    });
  } catch (const ParseError& e) {
    std::cerr << "mesh parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ConvergenceError& e) {
    std::cerr << "integration did not converge: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "grid construction failed: " << e.what() << "\n";
    return kExitConstruction;
  }
  report.print();
  return kExitOk;
}
