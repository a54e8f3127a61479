#ifndef CURV_DATAHANDLE_HPP
#define CURV_DATAHANDLE_HPP

#include <algorithm>
#include <vector>

#include "curv/grid.hpp"

namespace curv {

/// Per-entity gather/scatter of fixed-size records. The record type must
/// be trivially copyable and identical across ranks.
template <class T>
class DataHandle {
public:
  virtual ~DataHandle() = default;

  /// Number of records this entity contributes (and expects).
  virtual int size(int codim, int localIndex) const = 0;
  /// Append exactly size(codim, localIndex) records.
  virtual void gather(int codim, int localIndex, std::vector<T>& buffer) const = 0;
  /// Receive the records of a counterpart instance on another rank.
  virtual void scatter(int codim, int localIndex, int sourceRank, const T* data, int count) = 0;
};

namespace detail {

/// Destination ranks of one entity under the chosen protocol.
inline void destinationsFor(const EntityRankSets& sets, PartitionKind pk, CommInterface iface,
                            CommDirection dir, std::vector<int>& out) {
  out.clear();
  const bool isPb = pk == PartitionKind::ProcessBoundary;
  const bool isGhost = pk == PartitionKind::Ghost;
  const bool isInterior = !isPb && !isGhost; // includes domain/interior boundaries

  switch (iface) {
  case CommInterface::InteriorBorderInteriorBorder:
    if (isPb) out = sets.pbShare;
    break;
  case CommInterface::InteriorBorderAll:
    if (dir == CommDirection::Forward) {
      if (isPb) {
        out = sets.pbShare;
        out.insert(out.end(), sets.ghostHolders.begin(), sets.ghostHolders.end());
      } else if (isInterior) {
        out = sets.ghostHolders;
      }
    } else {
      if (isPb) out = sets.pbShare;
      if (isGhost) {
        out = sets.home;
        out.insert(out.end(), sets.pbOwners.begin(), sets.pbOwners.end());
      }
    }
    break;
  case CommInterface::AllAll:
    if (isPb) {
      out = sets.pbShare;
      out.insert(out.end(), sets.ghostHolders.begin(), sets.ghostHolders.end());
    } else if (isInterior) {
      out = sets.ghostHolders;
    } else {
      out = sets.home;
      out.insert(out.end(), sets.pbOwners.begin(), sets.pbOwners.end());
      out.insert(out.end(), sets.ghostPeers.begin(), sets.ghostPeers.end());
    }
    break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

} // namespace detail

/// Run one DataHandle exchange over all entities of a codimension. Every
/// instance of an entity receives the counterpart data once per sending
/// rank, in ascending sender-rank order.
template <class T>
void communicate(const CurvGrid& grid, DataHandle<T>& handle, CommInterface iface,
                 CommDirection dir, int codim) {
  static_assert(std::is_trivially_copyable_v<T>);
  struct Wire {
    GlobalIndex gid;
    T payload;
  };
  const GridStorage& s = grid.storage();
  Communicator& comm = grid.comm();
  const int n = comm.size();

  std::vector<std::vector<Wire>> perDest(n);
  std::vector<int> dests;
  std::vector<T> buffer;
  for (int i = 0; i < s.entityCount(codim); ++i) {
    const EntityRankSets& sets = grid.commMaps().at(codim, i);
    detail::destinationsFor(sets, s.partitionKind(codim, i), iface, dir, dests);
    if (dests.empty()) continue;
    buffer.clear();
    handle.gather(codim, i, buffer);
    if (static_cast<int>(buffer.size()) != handle.size(codim, i))
      throw DimensionError("gather produced a different record count than size()");
    for (int r : dests)
      for (const T& v : buffer) perDest[r].push_back({s.globalIndex(codim, i), v});
  }

  std::vector<Wire> out;
  std::vector<int> lengthsIn(n, 0);
  for (int r = 0; r < n; ++r) {
    std::stable_sort(perDest[r].begin(), perDest[r].end(),
                     [](const Wire& a, const Wire& b) { return a.gid < b.gid; });
    lengthsIn[r] = static_cast<int>(perDest[r].size());
    out.insert(out.end(), perDest[r].begin(), perDest[r].end());
  }
  std::vector<int> lengthsOut;
  const auto received = allToAll(comm, out, lengthsIn, lengthsOut, 40);

  std::size_t offset = 0;
  std::vector<T> run;
  for (int src = 0; src < n; ++src) {
    std::size_t i = offset;
    const std::size_t end = offset + lengthsOut[src];
    while (i < end) {
      const GlobalIndex gid = received[i].gid;
      run.clear();
      while (i < end && received[i].gid == gid) run.push_back(received[i++].payload);
      const auto it = s.globalToLocal[codim].find(gid);
      if (it == s.globalToLocal[codim].end())
        throw ProtocolError("received data for an entity this rank does not hold");
      if (static_cast<int>(run.size()) != handle.size(codim, it->second))
        throw DimensionError("scatter record count does not match the receiving size()");
      handle.scatter(codim, it->second, src, run.data(), static_cast<int>(run.size()));
    }
    offset = end;
  }
}

} // namespace curv

#endif
