#ifndef CURV_GRIDSTORAGE_HPP
#define CURV_GRIDSTORAGE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "curv/geometry.hpp"
#include "curv/gmshreader.hpp"
#include "curv/smallvec.hpp"

namespace curv {

using GlobalIndex = std::int64_t;

enum class PartitionKind : int {
  Interior = 0,
  ProcessBoundary = 1,
  DomainBoundary = 2,
  InteriorBoundary = 3,
  Ghost = 4
};

const char* partitionKindName(PartitionKind k);

enum class FaceBoundaryKind : int { None = 0, Domain = 1, Periodic = 2 };

/// Pre-enumeration identity of a shared entity: the sorted global indices
/// of its corners, padded to four entries.
struct CornerKey {
  std::array<GlobalIndex, 4> ids{-1, -1, -1, -1};
  std::int32_t n = 0;
  std::int32_t pad = 0;

  static CornerKey of(std::vector<GlobalIndex> corners);
  auto operator<=>(const CornerKey&) const = default;
};
static_assert(sizeof(CornerKey) == 40 && std::is_trivially_copyable_v<CornerKey>);

struct VertexRec {
  Vec position;
  GlobalIndex globalIndex = -1;
  PartitionKind kind = PartitionKind::Interior;
};

struct ElementRec {
  GlobalIndex globalIndex = -1;
  SimplexKind kind = SimplexKind::Tetrahedron;
  int order = 1;
  int physicalTag = -1;
  std::vector<int> vertexIds; // local vertex indices, Sorted Cartesian order
  PartitionKind pk = PartitionKind::Interior;
};

struct FaceRec {
  GlobalIndex globalIndex = -1;
  PartitionKind pk = PartitionKind::Interior;
  FaceBoundaryKind boundary = FaceBoundaryKind::None;
  bool interiorBoundarySurface = false; // tagged interior surface membership
  int physicalTag = -1;
  int parentElement = -1; // primary parent; interior wherever one exists
  int subIndexInParent = -1;
  int secondParentElement = -1; // -1: none (domain boundary)
};

struct EdgeRec {
  GlobalIndex globalIndex = -1;
  PartitionKind pk = PartitionKind::Interior;
  int parentElement = -1;
  int subIndexInParent = -1;
};

/// All per-rank grid data. Entities of every codimension sit in arrays
/// indexed by a contiguous local index; faces and edges are stored through
/// a parent element and a subentity index.
struct GridStorage {
  int meshDim = 3;
  int worldDim = 3;
  bool withGhosts = true;
  bool useFileElementIndex = true;
  bool xorOwnership = false;
  int rank = 0;
  int nRanks = 1;

  std::vector<VertexRec> vertices;
  std::vector<ElementRec> elements; // interior run first, ghosts appended
  std::vector<FaceRec> faces;
  std::vector<EdgeRec> edges; // meshDim == 3 only
  int nInteriorElements = 0;

  std::map<CornerKey, int> faceByKey;
  std::map<CornerKey, int> edgeByKey;
  std::array<std::map<GlobalIndex, int>, 4> globalToLocal; // per codim

  /// PB sharing ranks per codim and local index (empty when not shared).
  std::array<std::vector<std::vector<int>>, 4> pbNeighbors;

  /// Grid corners: the vertices that are corners of elements.
  std::vector<int> cornerVertexIds;

  int nCodims() const { return meshDim + 1; }
  int entityCount(int codim) const;
  GlobalIndex globalIndex(int codim, int localIndex) const;
  PartitionKind partitionKind(int codim, int localIndex) const;
  int physicalTag(int codim, int localIndex) const;

  /// Corner vertex local ids of an entity, in Sorted Cartesian corner order.
  std::vector<int> entityCornerVertices(int codim, int localIndex) const;
  CornerKey entityCornerKey(int codim, int localIndex) const;

  /// Interpolatory vertex local ids (faces/edges resolve through their
  /// parent element's grid subset).
  std::vector<int> entityVertexIds(int codim, int localIndex) const;

  CurvilinearGeometry elementGeometry(int localIndex, bool precompute = false) const;
  CurvilinearGeometry entityGeometry(int codim, int localIndex) const;

  /// Unit outer normal of a face with respect to its primary parent.
  Vec faceOuterNormal(int faceIndex, const Vec& rFace) const;

  /// Second parent of a face; throws for domain boundaries.
  int faceSecondParent(int faceIndex) const;

  /// Local indices of entities with the given partition kind.
  std::vector<int> subset(int codim, PartitionKind kind) const;
};

} // namespace curv

#endif
