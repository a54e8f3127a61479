#include "curv/communicator.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <thread>

namespace curv {

namespace {

enum class OpKind : int { None = 0, Dense, Neighbor, Barrier };

struct OpDescriptor {
  OpKind kind = OpKind::None;
  std::size_t recordSize = 0;
  int tag = 0;

  bool matches(const OpDescriptor& o) const {
    return kind == o.kind && recordSize == o.recordSize && tag == o.tag;
  }
};

enum class RankState { Pending, Deposited, Done };

/// Shared rendezvous state of one simulated cluster. All mutation happens
/// under one mutex; the last rank to arrive at a collective routes the
/// round for everyone.
struct Fabric {
  explicit Fabric(int n, SimOptions o) : nRanks(n), opts(std::move(o)) {
    state.assign(n, RankState::Pending);
    ops.resize(n);
    inData.resize(n);
    inLengths.resize(n);
    inNeighbors.resize(n);
    outReady.assign(n, false);
    outData.resize(n);
    outLengths.resize(n);
    outNeighbors.resize(n);
  }

  int nRanks;
  SimOptions opts;
  std::mutex mtx;
  std::condition_variable cv;

  std::vector<RankState> state;
  int depositedCount = 0;
  int activeCount = 0; // set at launch

  std::vector<OpDescriptor> ops;
  std::vector<std::vector<std::byte>> inData;
  std::vector<std::vector<int>> inLengths;
  std::vector<std::vector<int>> inNeighbors;

  std::vector<bool> outReady;
  std::vector<std::vector<std::byte>> outData;
  std::vector<std::vector<int>> outLengths;
  std::vector<std::vector<int>> outNeighbors;

  std::string error;
  int turn = 0; // sequential schedule only

  bool sequential() const { return opts.schedule == SimSchedule::Sequential; }

  void poison(const std::string& msg) {
    if (error.empty()) error = msg;
    cv.notify_all();
  }

  void advanceTurn() {
    // pass the token to the lowest rank that still has user code to run
    turn = -1;
    for (int r = 0; r < nRanks; ++r)
      if (state[r] == RankState::Pending) {
        turn = r;
        break;
      }
    cv.notify_all();
  }

  void trace(int src, int dst, std::size_t bytes, int tag) {
    if (opts.trace && bytes > 0) *opts.trace << src << ' ' << dst << ' ' << bytes << ' ' << tag << '\n';
  }

  // Called with the lock held once every active rank has deposited.
  void route() {
    const OpDescriptor& first = ops[0];
    for (int r = 1; r < nRanks; ++r)
      if (!ops[r].matches(first)) {
        poison("mismatched collective calls across ranks");
        return;
      }

    if (first.kind == OpKind::Dense) {
      routeDense(first);
    } else if (first.kind == OpKind::Neighbor) {
      routeNeighbor(first);
    } // Barrier: nothing to move

    depositedCount = 0;
    for (int r = 0; r < nRanks; ++r) {
      if (state[r] == RankState::Deposited) state[r] = RankState::Pending;
      outReady[r] = true;
      inData[r].clear();
      inLengths[r].clear();
      inNeighbors[r].clear();
    }
    if (sequential()) advanceTurn();
    cv.notify_all();
  }

  void routeDense(const OpDescriptor& op) {
    // per-source offsets into each sender's buffer
    for (int dst = 0; dst < nRanks; ++dst) {
      auto& out = outData[dst];
      auto& lens = outLengths[dst];
      out.clear();
      lens.assign(nRanks, 0);
      for (int src = 0; src < nRanks; ++src) {
        const auto& lengths = inLengths[src];
        std::size_t offset = 0;
        for (int d = 0; d < dst; ++d) offset += static_cast<std::size_t>(lengths[d]) * op.recordSize;
        const std::size_t bytes = static_cast<std::size_t>(lengths[dst]) * op.recordSize;
        out.insert(out.end(), inData[src].begin() + offset, inData[src].begin() + offset + bytes);
        lens[src] = lengths[dst];
        trace(src, dst, bytes, op.tag);
      }
    }
  }

  void routeNeighbor(const OpDescriptor& op) {
    // symmetry check: a lists b iff b lists a
    for (int a = 0; a < nRanks; ++a)
      for (int b : inNeighbors[a]) {
        const auto& nb = inNeighbors[b];
        if (!std::binary_search(nb.begin(), nb.end(), a)) {
          poison("asymmetric neighbor lists: rank " + std::to_string(a) + " lists " +
                 std::to_string(b) + " but not vice versa");
          return;
        }
      }

    for (int dst = 0; dst < nRanks; ++dst) {
      auto& out = outData[dst];
      out.clear();
      outNeighbors[dst] = inNeighbors[dst];
      outLengths[dst].assign(inNeighbors[dst].size(), 0);
      for (std::size_t i = 0; i < inNeighbors[dst].size(); ++i) {
        const int src = inNeighbors[dst][i];
        const auto& srcNb = inNeighbors[src];
        const auto it = std::lower_bound(srcNb.begin(), srcNb.end(), dst);
        const std::size_t slot = static_cast<std::size_t>(it - srcNb.begin());
        std::size_t offset = 0;
        for (std::size_t d = 0; d < slot; ++d)
          offset += static_cast<std::size_t>(inLengths[src][d]) * op.recordSize;
        const std::size_t bytes = static_cast<std::size_t>(inLengths[src][slot]) * op.recordSize;
        out.insert(out.end(), inData[src].begin() + offset, inData[src].begin() + offset + bytes);
        outLengths[dst][i] = inLengths[src][slot];
        trace(src, dst, bytes, op.tag);
      }
    }
  }
};

class SimCommunicator final : public Communicator {
public:
  SimCommunicator(Fabric& fabric, int rank) : fabric_(fabric), rank_(rank) {}

  int rank() const override { return rank_; }
  int size() const override { return fabric_.nRanks; }

  std::vector<std::byte> allToAllBytes(const std::vector<std::byte>& in, std::size_t recordSize,
                                       const std::vector<int>& lengthsIn,
                                       std::vector<int>& lengthsOut, int tag) override {
    validateDense(in, recordSize, lengthsIn);
    OpDescriptor op{OpKind::Dense, recordSize, tag};
    std::vector<int> neighbors;
    std::vector<int> neighborsOut;
    return exchange(op, in, lengthsIn, neighbors, lengthsOut, neighborsOut);
  }

  std::vector<std::byte> neighborAllToAllBytes(const std::vector<std::byte>& in,
                                               std::size_t recordSize,
                                               const std::vector<int>& neighborRanksIn,
                                               const std::vector<int>& lengthsIn,
                                               std::vector<int>& neighborRanksOut,
                                               std::vector<int>& lengthsOut, int tag) override {
    validateNeighbor(in, recordSize, neighborRanksIn, lengthsIn);
    OpDescriptor op{OpKind::Neighbor, recordSize, tag};
    return exchange(op, in, lengthsIn, neighborRanksIn, lengthsOut, neighborRanksOut);
  }

  void barrier() override {
    OpDescriptor op{OpKind::Barrier, 0, 0};
    std::vector<int> lengthsOut, neighborsOut;
    (void)exchange(op, {}, {}, {}, lengthsOut, neighborsOut);
  }

private:
  void validateDense(const std::vector<std::byte>& in, std::size_t recordSize,
                     const std::vector<int>& lengthsIn) const {
    if (recordSize == 0) throw DimensionError("record size must be nonzero");
    if (static_cast<int>(lengthsIn.size()) != fabric_.nRanks)
      throw DimensionError("lengthsIn must have one entry per rank");
    long total = 0;
    for (int l : lengthsIn) {
      if (l < 0) throw DimensionError("negative record count");
      total += l;
    }
    if (static_cast<std::size_t>(total) * recordSize != in.size())
      throw DimensionError("payload size does not match record counts");
  }

  void validateNeighbor(const std::vector<std::byte>& in, std::size_t recordSize,
                        const std::vector<int>& neighbors, const std::vector<int>& lengthsIn) const {
    if (recordSize == 0) throw DimensionError("record size must be nonzero");
    if (neighbors.size() != lengthsIn.size())
      throw DimensionError("neighbor and length lists differ in size");
    long total = 0;
    for (int l : lengthsIn) {
      if (l < 0) throw DimensionError("negative record count");
      total += l;
    }
    if (static_cast<std::size_t>(total) * recordSize != in.size())
      throw DimensionError("payload size does not match record counts");
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      if (neighbors[i] < 0 || neighbors[i] >= fabric_.nRanks || neighbors[i] == rank_)
        throw DimensionError("invalid neighbor rank " + std::to_string(neighbors[i]));
      if (i > 0 && neighbors[i] <= neighbors[i - 1])
        throw DimensionError("neighbor ranks must be strictly ascending");
    }
  }

  std::vector<std::byte> exchange(const OpDescriptor& op, const std::vector<std::byte>& in,
                                  const std::vector<int>& lengthsIn,
                                  const std::vector<int>& neighborsIn,
                                  std::vector<int>& lengthsOut, std::vector<int>& neighborsOut) {
    std::unique_lock<std::mutex> lock(fabric_.mtx);
    if (!fabric_.error.empty()) throw ProtocolError(fabric_.error);

    fabric_.ops[rank_] = op;
    fabric_.inData[rank_] = in;
    fabric_.inLengths[rank_] = lengthsIn;
    fabric_.inNeighbors[rank_] = neighborsIn;
    fabric_.state[rank_] = RankState::Deposited;
    ++fabric_.depositedCount;

    if (fabric_.activeCount < fabric_.nRanks) {
      // a rank already returned from the program; this round can never fill
      fabric_.poison("collective called while other ranks already finished");
    } else if (fabric_.depositedCount == fabric_.nRanks) {
      fabric_.route();
    } else if (fabric_.sequential()) {
      fabric_.advanceTurn();
    }

    fabric_.cv.wait(lock, [&] {
      if (!fabric_.error.empty()) return true;
      if (!fabric_.outReady[rank_]) return false;
      return !fabric_.sequential() || fabric_.turn == rank_;
    });
    if (!fabric_.error.empty()) throw ProtocolError(fabric_.error);

    fabric_.outReady[rank_] = false;
    std::vector<std::byte> out = std::move(fabric_.outData[rank_]);
    lengthsOut = std::move(fabric_.outLengths[rank_]);
    neighborsOut = std::move(fabric_.outNeighbors[rank_]);
    fabric_.outData[rank_].clear();
    fabric_.outLengths[rank_].clear();
    fabric_.outNeighbors[rank_].clear();
    return out;
  }

  Fabric& fabric_;
  int rank_;
};

} // namespace

void runSimulated(int nRanks, const std::function<void(Communicator&)>& program,
                  const SimOptions& options) {
  if (nRanks < 1) throw DimensionError("need at least one rank");
  Fabric fabric(nRanks, options);
  fabric.activeCount = nRanks;

  std::vector<std::exception_ptr> errors(nRanks);
  std::exception_ptr firstOriginal;
  int firstOriginalRank = -1;

  std::vector<std::thread> threads;
  threads.reserve(nRanks);
  for (int r = 0; r < nRanks; ++r) {
    threads.emplace_back([&, r] {
      SimCommunicator comm(fabric, r);
      if (fabric.sequential()) {
        std::unique_lock<std::mutex> lock(fabric.mtx);
        fabric.cv.wait(lock, [&] { return fabric.turn == r || !fabric.error.empty(); });
      }
      try {
        program(comm);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fabric.mtx);
        errors[r] = std::current_exception();
        if (!firstOriginal) {
          firstOriginal = errors[r];
          firstOriginalRank = r;
        }
      }
      std::lock_guard<std::mutex> lock(fabric.mtx);
      fabric.state[r] = RankState::Done;
      --fabric.activeCount;
      if (fabric.depositedCount > 0) {
        // other ranks are parked in a collective that can never fill now
        fabric.poison(errors[r] ? "collective aborted: rank " + std::to_string(r) + " failed"
                                : "collective without all ranks: rank " + std::to_string(r) +
                                      " already finished");
      }
      if (fabric.sequential()) fabric.advanceTurn();
      fabric.cv.notify_all();
    });
  }
  for (auto& t : threads) t.join();

  if (firstOriginal) std::rethrow_exception(firstOriginal);
  for (int r = 0; r < nRanks; ++r)
    if (errors[r]) std::rethrow_exception(errors[r]);
  (void)firstOriginalRank;
}

} // namespace curv
