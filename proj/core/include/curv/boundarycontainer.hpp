#ifndef CURV_BOUNDARYCONTAINER_HPP
#define CURV_BOUNDARYCONTAINER_HPP

#include <vector>

#include "curv/grid.hpp"

namespace curv {

/// A boundary face collected from another rank, with enough data to
/// integrate over it: geometry, orientation, tags and the global indices
/// of its subentities.
struct RemoteBoundaryFace {
  GlobalIndex globalIndex = -1;
  int order = 1;
  int physicalTag = -1;
  double orientation = 1.0; // orientation * tangent cross points outward
  std::vector<Vec> vertexPositions; // Sorted Cartesian face frame
  std::vector<GlobalIndex> vertexGids;
  std::vector<GlobalIndex> edgeGids;   // per face edge (3D grids)
  std::vector<GlobalIndex> cornerGids; // face corners

  CurvilinearGeometry geometry(int worldDim) const;
  Vec unitOuterNormal(int worldDim, const Vec& rFace) const;
};

/// Every rank's view of a closed boundary surface: all selected faces that
/// are NOT already present on this rank. Selected are either the domain
/// boundary or one tagged interior surface; the outer normal is oriented
/// away from the side selected by volumeTag.
class GlobalBoundaryContainer {
public:
  GlobalBoundaryContainer(const CurvGrid& grid, bool isDomainBoundary, int volumeTag = -1,
                          int surfaceTag = -1);

  const std::vector<RemoteBoundaryFace>& faces() const { return faces_; }
  auto begin() const { return faces_.begin(); }
  auto end() const { return faces_.end(); }
  std::size_t size() const { return faces_.size(); }

  /// The faces of the selected surface held locally (with a real parent).
  const std::vector<int>& localFaces() const { return localFaces_; }

private:
  std::vector<RemoteBoundaryFace> faces_;
  std::vector<int> localFaces_;
  int worldDim_ = 3;
};

} // namespace curv

#endif
