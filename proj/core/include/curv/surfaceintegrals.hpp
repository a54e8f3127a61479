#ifndef CURV_SURFACEINTEGRALS_HPP
#define CURV_SURFACEINTEGRALS_HPP

#include <utility>
#include <vector>

#include "curv/boundarycontainer.hpp"
#include "curv/grid.hpp"

namespace curv {

/// One selected boundary face with its outward orientation: the sign that
/// makes orientation * surfaceNormal(r) point out of the selected volume.
struct OrientedFace {
  CurvilinearGeometry geometry;
  double orientation = 1.0;
};

/// The local faces of the domain boundary (or of a tagged interior
/// surface, oriented away from the volumeTag side). With dedupeShared,
/// rank-split interior faces are kept by their lower sharing rank only, so
/// that summing the per-rank integrals covers the surface exactly once.
std::vector<OrientedFace> orientedLocalSurface(const CurvGrid& grid, bool domainBoundary,
                                               int surfaceTag = -1, int volumeTag = -1,
                                               bool dedupeShared = true);

/// Flux of the field x -> (x-x0)/|x-x0|^3 of a unit point charge at x0
/// through the given faces (local part; sum over ranks for the closed
/// surface).
double chargeFluxLocal(const std::vector<OrientedFace>& faces, const Vec& charge, double relTol,
                       double absTol);

/// Integral of the area-weighted outer normal over the given faces.
Vec normalIntegralLocal(const std::vector<OrientedFace>& faces, double relTol);

/// Total area of the given faces.
double surfaceAreaLocal(const std::vector<OrientedFace>& faces, double relTol);

/// Collective sums over the communicator.
double sumOverRanks(Communicator& comm, double value);
Vec sumOverRanks(Communicator& comm, const Vec& value);

} // namespace curv

#endif
