#ifndef CURV_PARTITION_HPP
#define CURV_PARTITION_HPP

#include <cstdint>
#include <vector>

#include "curv/smallvec.hpp"

namespace curv {

/// Element connectivity snapshot used for partitioning: one node per
/// element with its corner vertex ids and mass center, adjacency through
/// shared faces (symmetric, no self-loops).
struct ElementGraph {
  struct Node {
    std::int64_t globalIndex = -1;
    std::vector<std::int64_t> cornerIds;
    Vec center;
  };

  std::vector<Node> nodes;
  std::vector<std::vector<int>> adjacency;

  int size() const { return static_cast<int>(nodes.size()); }

  /// Build the shared-face adjacency from the corner ids (a face is any
  /// (nCorners-1)-subset of an element's corners, keyed by sorted ids).
  static ElementGraph build(std::vector<Node> nodes);
};

/// Assigns every element to one of nParts parts.
class Partitioner {
public:
  virtual ~Partitioner() = default;
  virtual std::vector<int> partition(const ElementGraph& graph, int nParts) const = 0;
};

/// Recursive coordinate bisection over element mass centers: median split
/// along the widest axis, ties broken by element global index. Deterministic
/// for fixed input; part sizes differ by at most one.
class RcbPartitioner final : public Partitioner {
public:
  std::vector<int> partition(const ElementGraph& graph, int nParts) const override;
};

/// Fixed element-to-part map, for reproducing specific layouts in tests
/// and fixtures.
class PrescribedPartitioner final : public Partitioner {
public:
  explicit PrescribedPartitioner(std::vector<int> parts) : parts_(std::move(parts)) {}
  std::vector<int> partition(const ElementGraph& graph, int nParts) const override;

private:
  std::vector<int> parts_;
};

} // namespace curv

#endif
