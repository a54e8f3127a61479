#ifndef CURV_COMMUNICATOR_HPP
#define CURV_COMMUNICATOR_HPP

#include <bit>
#include <cstddef>
#include <cstring>
#include <functional>
#include <ostream>
#include <type_traits>
#include <vector>

#include "curv/errors.hpp"

namespace curv {

/// Multi-rank message fabric with dense and neighbor all-to-all collectives
/// over fixed-size records. Collective calls must be made by all ranks in
/// matching order; the simulation backend reports violations instead of
/// hanging.
class Communicator {
public:
  virtual ~Communicator() = default;

  virtual int rank() const = 0;
  virtual int size() const = 0;

  /// Dense exchange. `in` holds the per-destination record runs
  /// back-to-back (destination 0 first); lengthsIn[d] counts records for
  /// rank d. The result holds the per-source runs in ascending source rank
  /// order and fills lengthsOut accordingly; record order within one
  /// (source, destination) pair is preserved.
  virtual std::vector<std::byte> allToAllBytes(const std::vector<std::byte>& in,
                                               std::size_t recordSize,
                                               const std::vector<int>& lengthsIn,
                                               std::vector<int>& lengthsOut, int tag) = 0;

  /// Exchange restricted to the listed neighbor ranks (strictly
  /// ascending). Neighbor lists must be pairwise symmetric across ranks.
  virtual std::vector<std::byte> neighborAllToAllBytes(
      const std::vector<std::byte>& in, std::size_t recordSize,
      const std::vector<int>& neighborRanksIn, const std::vector<int>& lengthsIn,
      std::vector<int>& neighborRanksOut, std::vector<int>& lengthsOut, int tag) = 0;

  virtual void barrier() = 0;
};

// Fixed-width records travel as raw bytes; this library targets
// little-endian hosts so the in-memory layout is the wire layout.
static_assert(std::endian::native == std::endian::little,
              "record exchange assumes a little-endian host");

template <class T>
std::vector<T> allToAll(Communicator& comm, const std::vector<T>& in,
                        const std::vector<int>& lengthsIn, std::vector<int>& lengthsOut,
                        int tag = 0) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::vector<std::byte> bytes(in.size() * sizeof(T));
  if (!in.empty()) std::memcpy(bytes.data(), in.data(), bytes.size());
  const std::vector<std::byte> outBytes = comm.allToAllBytes(bytes, sizeof(T), lengthsIn, lengthsOut, tag);
  std::vector<T> out(outBytes.size() / sizeof(T));
  if (!out.empty()) std::memcpy(out.data(), outBytes.data(), outBytes.size());
  return out;
}

template <class T>
std::vector<T> neighborAllToAll(Communicator& comm, const std::vector<T>& in,
                                const std::vector<int>& neighborRanksIn,
                                const std::vector<int>& lengthsIn,
                                std::vector<int>& neighborRanksOut, std::vector<int>& lengthsOut,
                                int tag = 0) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::vector<std::byte> bytes(in.size() * sizeof(T));
  if (!in.empty()) std::memcpy(bytes.data(), in.data(), bytes.size());
  const std::vector<std::byte> outBytes = comm.neighborAllToAllBytes(
      bytes, sizeof(T), neighborRanksIn, lengthsIn, neighborRanksOut, lengthsOut, tag);
  std::vector<T> out(outBytes.size() / sizeof(T));
  if (!out.empty()) std::memcpy(out.data(), outBytes.data(), outBytes.size());
  return out;
}

/// Send the same record run to every rank; receive everyone's run.
template <class T>
std::vector<T> allGather(Communicator& comm, const std::vector<T>& mine,
                         std::vector<int>& lengthsOut, int tag = 0) {
  std::vector<T> in;
  in.reserve(mine.size() * comm.size());
  for (int d = 0; d < comm.size(); ++d) in.insert(in.end(), mine.begin(), mine.end());
  const std::vector<int> lengthsIn(comm.size(), static_cast<int>(mine.size()));
  return allToAll(comm, in, lengthsIn, lengthsOut, tag);
}

/// How the simulated ranks are driven.
enum class SimSchedule {
  Concurrent, // free-running worker threads, synchronized at collectives
  Sequential  // one runnable rank at a time, round-robin between collectives
};

struct SimOptions {
  SimSchedule schedule = SimSchedule::Concurrent;
  std::ostream* trace = nullptr; // one line per message: "src dst bytes tag"
};

/// Run `program` on nRanks simulated ranks inside this process. Collective
/// outputs are identical for both schedules. The first raised exception
/// (lowest rank) is rethrown after all ranks stopped.
void runSimulated(int nRanks, const std::function<void(Communicator&)>& program,
                  const SimOptions& options = {});

} // namespace curv

#endif
