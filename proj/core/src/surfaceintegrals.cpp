#include "curv/surfaceintegrals.hpp"

#include "curv/quadrature.hpp"
#include "curv/refsimplex.hpp"

namespace curv {

std::vector<OrientedFace> orientedLocalSurface(const CurvGrid& grid, bool domainBoundary,
                                               int surfaceTag, int volumeTag, bool dedupeShared) {
  const GridStorage& s = grid.storage();
  std::vector<OrientedFace> out;
  const Vec rc = refsimplex::center(s.meshDim - 1);
  for (int i = 0; i < static_cast<int>(s.faces.size()); ++i) {
    const FaceRec& f = s.faces[i];
    if (f.pk == PartitionKind::Ghost) continue;
    if (domainBoundary) {
      if (f.pk != PartitionKind::DomainBoundary) continue;
    } else {
      if (!f.interiorBoundarySurface || f.physicalTag != surfaceTag) continue;
      // split interior-boundary faces are integrated by one side only
      const auto& sharers = s.pbNeighbors[1][i];
      if (dedupeShared && !sharers.empty() && sharers[0] < grid.rank()) continue;
    }
    OrientedFace of{s.entityGeometry(1, i), 1.0};
    const Vec outward = s.faceOuterNormal(i, rc);
    const Vec cross = of.geometry.surfaceNormal(rc);
    of.orientation = outward.dot(cross) > 0 ? 1.0 : -1.0;
    if (!domainBoundary && volumeTag >= 0 &&
        s.elements[f.parentElement].physicalTag != volumeTag)
      of.orientation = -of.orientation;
    out.push_back(std::move(of));
  }
  return out;
}

double chargeFluxLocal(const std::vector<OrientedFace>& faces, const Vec& charge, double relTol,
                       double absTol) {
  IntegratorConfig cfg;
  cfg.relTolerance = relTol;
  cfg.absTolerance = absTol;
  double flux = 0;
  for (const OrientedFace& f : faces) {
    const auto stat = integrateRecursive(
        f.geometry.mydim(),
        [&](const Vec& r) {
          const Vec x = f.geometry.global(r);
          Vec e = x - charge;
          const double d = e.twoNorm();
          e *= 1.0 / (d * d * d);
          return e.dot(f.geometry.surfaceNormal(r)) * f.orientation;
        },
        cfg);
    flux += stat.value;
  }
  return flux;
}

Vec normalIntegralLocal(const std::vector<OrientedFace>& faces, double relTol) {
  IntegratorConfig cfg;
  cfg.relTolerance = relTol;
  Vec total;
  for (const OrientedFace& f : faces) {
    const auto stat = integrateRecursive(
        f.geometry.mydim(),
        [&](const Vec& r) { return f.geometry.surfaceNormal(r) * f.orientation; }, cfg);
    if (total.size() == 0) total = Vec::zero(stat.value.size());
    total += stat.value;
  }
  return total.size() ? total : Vec::zero(3);
}

double surfaceAreaLocal(const std::vector<OrientedFace>& faces, double relTol) {
  double area = 0;
  for (const OrientedFace& f : faces) area += f.geometry.volume(relTol);
  return area;
}

double sumOverRanks(Communicator& comm, double value) {
  std::vector<double> mine = {value};
  std::vector<int> lens;
  const auto all = allGather(comm, mine, lens, 60);
  double total = 0;
  for (double v : all) total += v;
  return total;
}

Vec sumOverRanks(Communicator& comm, const Vec& value) {
  std::vector<double> mine(value.size());
  for (int i = 0; i < value.size(); ++i) mine[i] = value[i];
  std::vector<int> lens;
  const auto all = allGather(comm, mine, lens, 61);
  Vec total(value.size());
  for (std::size_t i = 0; i < all.size(); ++i) total[i % value.size()] += all[i];
  return total;
}

} // namespace curv
