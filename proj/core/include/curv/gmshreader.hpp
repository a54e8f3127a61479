#ifndef CURV_GMSHREADER_HPP
#define CURV_GMSHREADER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "curv/communicator.hpp"
#include "curv/partition.hpp"
#include "curv/smallvec.hpp"

namespace curv {

enum class SimplexKind : int { Edge = 1, Triangle = 2, Tetrahedron = 3 };

inline int simplexDim(SimplexKind k) { return static_cast<int>(k); }

/// Permutation from Sorted Cartesian position to GMSH node position for
/// simplices of order 1..5: sortedNodes[i] = gmshNodes[perm[i]].
const std::vector<int>& gmshPermutation(SimplexKind kind, int order);

/// Position of a GMSH-ordered node within the Sorted Cartesian grid
/// (inverse of gmshPermutation).
int gmshToSortedCartesian(SimplexKind kind, int order, int gmshLocalIndex);

/// GMSH element type code for a simplex kind and order; -1 if unsupported.
int gmshTypeCode(SimplexKind kind, int order);

/// Decode a GMSH type code. Returns false for non-simplex codes.
bool simplexFromGmshType(int typeCode, SimplexKind& kind, int& order);

/// One raw record of the $Elements section.
struct RawElement {
  std::int64_t gmshElementIndex = -1;
  int gmshType = 0;
  int physicalTag = 0;
  std::vector<std::int64_t> vertexGlobalIds; // GMSH node order
  int order = 1;
  bool isBoundarySegment = false;
};

/// Receives the rank-local part of the mesh. Vertices arrive before any
/// entity referencing them; element vertex index lists are positions in
/// the insertion sequence, in Sorted Cartesian order.
class GridFactorySink {
public:
  virtual ~GridFactorySink() = default;
  virtual void insertVertex(const Vec& pos, std::int64_t globalIndex) = 0;
  /// elementIndex is the file's element number, available for grids that
  /// reuse it as the element global index.
  virtual void insertElement(SimplexKind kind, const std::vector<int>& localVertexIndices,
                             int order, int physicalTag, std::int64_t elementIndex) = 0;
  virtual void insertBoundarySegment(SimplexKind kind, const std::vector<int>& localVertexIndices,
                                     int order, int physicalTag, bool isDomainBoundary) = 0;
  virtual void createGrid() = 0;
};

class TimingLog;

struct ReadOptions {
  bool partition = true;        // false keeps the contiguous block split
  std::string vtkDebugPath;     // when set, dump this rank's elements as legacy .vtk
  std::size_t inMemoryLimit = 64u << 20; // re-scan from memory below this size
  TimingLog* timing = nullptr;  // per-pass intervals when provided
};

// Reader pass names as they appear in the timing report.
namespace stage {
inline constexpr const char* readCount = "reader: count elements";
inline constexpr const char* readCorners = "reader: read corner block";
inline constexpr const char* readPartition = "reader: partition elements";
inline constexpr const char* readElements = "reader: read element data";
inline constexpr const char* readBoundary = "reader: read boundary data";
inline constexpr const char* readVertices = "reader: read vertex coordinates";
inline constexpr const char* readInsert = "reader: insert into factory";
} // namespace stage

struct ReadSummary {
  int meshDim = 0;
  std::int64_t totalElements = 0;
  std::int64_t totalBoundarySegments = 0;
  int elementsInserted = 0;
  int boundarySegmentsInserted = 0;
  int verticesInserted = 0;
  std::vector<int> volumeTags;         // across all ranks
  std::vector<int> domainBoundaryTags; // tags whose faces all have one parent
  std::vector<int> interiorBoundaryTags;
};

/// Multi-pass parallel reader for ASCII GMSH v2 files with curvilinear
/// simplex elements of order 1..5. Every rank scans the file itself,
/// keeps the element block assigned to it, partitions, and feeds its part
/// of the mesh to the sink (vertices first, then elements, then boundary
/// segments). createGrid() is left to the caller.
ReadSummary readMesh(const std::string& path, Communicator& comm, const Partitioner& partitioner,
                     GridFactorySink& sink, const ReadOptions& options = {});

} // namespace curv

#endif
