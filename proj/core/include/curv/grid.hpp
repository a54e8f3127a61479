#ifndef CURV_GRID_HPP
#define CURV_GRID_HPP

#include <memory>
#include <vector>

#include "curv/communicator.hpp"
#include "curv/gridstorage.hpp"
#include "curv/timing.hpp"

namespace curv {

/// DataHandle protocols. The pair kinds each interface activates:
///   InteriorBorder_InteriorBorder          PB->PB
///   InteriorBorder_All  forward            PB->PB, PB->G, I->G
///   InteriorBorder_All  backward           PB->PB, G->I, G->PB
///   All_All                                all six, including G->G
enum class CommInterface { InteriorBorderInteriorBorder, InteriorBorderAll, AllAll };
enum class CommDirection { Forward, Backward };

/// Per-entity destination rank sets for the six communicating pair kinds.
struct EntityRankSets {
  std::vector<int> pbShare;      // PB here <-> PB there
  std::vector<int> ghostHolders; // I/PB here -> G there
  std::vector<int> home;         // G here -> I there (at most one rank)
  std::vector<int> pbOwners;     // G here -> PB there
  std::vector<int> ghostPeers;   // G here -> G there
};

struct CommMaps {
  // [codim][localIndex]
  std::vector<std::vector<EntityRankSets>> sets;

  const EntityRankSets& at(int codim, int localIndex) const { return sets[codim][localIndex]; }
};

/// The constructed multi-rank grid: storage, communication maps, and the
/// collective operations that run over them. Read-only after construction.
class CurvGrid {
public:
  CurvGrid(GridStorage storage, CommMaps maps, Communicator& comm, TimingLog timings)
      : storage_(std::move(storage)), maps_(std::move(maps)), comm_(&comm),
        timings_(std::move(timings)) {}

  const GridStorage& storage() const { return storage_; }
  const CommMaps& commMaps() const { return maps_; }
  Communicator& comm() const { return *comm_; }
  const TimingLog& timings() const { return timings_; }
  TimingLog& timings() { return timings_; }

  int rank() const { return comm_->rank(); }
  int nRanks() const { return comm_->size(); }

private:
  GridStorage storage_;
  CommMaps maps_;
  Communicator* comm_;
  TimingLog timings_;
};

/// Factory building the grid from reader insertions. Construction runs
/// collectively over all ranks when createGrid() is called.
class CurvGridFactory final : public GridFactorySink {
public:
  CurvGridFactory(Communicator& comm, bool withGhostElements = true,
                  bool withGmshElementIndex = true, bool xorOwnership = false);

  void insertVertex(const Vec& pos, std::int64_t globalIndex) override;
  void insertElement(SimplexKind kind, const std::vector<int>& localVertexIndices, int order,
                     int physicalTag, std::int64_t elementIndex) override;
  void insertBoundarySegment(SimplexKind kind, const std::vector<int>& localVertexIndices,
                             int order, int physicalTag, bool isDomainBoundary) override;
  void createGrid() override;

  /// createGrid() + takeGrid() in one step.
  std::shared_ptr<CurvGrid> releaseGrid();

private:
  struct Inserted {
    SimplexKind kind;
    std::vector<int> vertexIds;
    int order;
    int physicalTag;
    std::int64_t elementIndex;
    bool isDomainBoundary;
  };

  Communicator& comm_;
  GridStorage storage_;
  std::vector<Inserted> insertedElements_;
  std::vector<Inserted> insertedBoundary_;
  std::shared_ptr<CurvGrid> grid_;
};

// Construction stage names as they appear in the timing report.
namespace stage {
inline constexpr const char* entityGeneration = "grid: entity generation";
inline constexpr const char* globalIndices = "grid: global index construction";
inline constexpr const char* ghostElements = "grid: ghost element construction";
inline constexpr const char* indexSubsets = "grid: index subset construction";
inline constexpr const char* commMaps = "grid: communication map construction";
} // namespace stage

} // namespace curv

#endif
