#include "curv/partition.hpp"

#include <algorithm>
#include <map>

#include "curv/errors.hpp"

namespace curv {

ElementGraph ElementGraph::build(std::vector<Node> nodes) {
  ElementGraph g;
  g.nodes = std::move(nodes);
  g.adjacency.assign(g.nodes.size(), {});

  std::map<std::vector<std::int64_t>, std::vector<int>> faceParents;
  for (size_t e = 0; e < g.nodes.size(); ++e) {
    const auto& corners = g.nodes[e].cornerIds;
    for (size_t skip = 0; skip < corners.size(); ++skip) {
      std::vector<std::int64_t> key;
      key.reserve(corners.size() - 1);
      for (size_t i = 0; i < corners.size(); ++i)
        if (i != skip) key.push_back(corners[i]);
      std::sort(key.begin(), key.end());
      faceParents[key].push_back(static_cast<int>(e));
    }
  }
  for (const auto& [key, parents] : faceParents)
    for (size_t i = 0; i < parents.size(); ++i)
      for (size_t j = i + 1; j < parents.size(); ++j) {
        g.adjacency[parents[i]].push_back(parents[j]);
        g.adjacency[parents[j]].push_back(parents[i]);
      }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

namespace {

void rcbRecurse(const ElementGraph& graph, std::vector<int>& order, int lo, int hi, int partBase,
                int nParts, std::vector<int>& out) {
  if (nParts == 1) {
    for (int i = lo; i < hi; ++i) out[order[i]] = partBase;
    return;
  }
  const int n = hi - lo;
  const int nLeftParts = nParts / 2;
  const int nRightParts = nParts - nLeftParts;
  const int nLeft = static_cast<int>((static_cast<long>(n) * nLeftParts) / nParts);

  // widest spread of the mass centers picks the split axis
  const int dim = graph.nodes[order[lo]].center.size();
  int axis = 0;
  double best = -1;
  for (int d = 0; d < dim; ++d) {
    double mn = graph.nodes[order[lo]].center[d], mx = mn;
    for (int i = lo; i < hi; ++i) {
      const double c = graph.nodes[order[i]].center[d];
      mn = std::min(mn, c);
      mx = std::max(mx, c);
    }
    if (mx - mn > best) {
      best = mx - mn;
      axis = d;
    }
  }

  std::nth_element(order.begin() + lo, order.begin() + lo + nLeft, order.begin() + hi,
                   [&](int a, int b) {
                     const double ca = graph.nodes[a].center[axis];
                     const double cb = graph.nodes[b].center[axis];
                     if (ca != cb) return ca < cb;
                     return graph.nodes[a].globalIndex < graph.nodes[b].globalIndex;
                   });
  rcbRecurse(graph, order, lo, lo + nLeft, partBase, nLeftParts, out);
  rcbRecurse(graph, order, lo + nLeft, hi, partBase + nLeftParts, nRightParts, out);
}

} // namespace

std::vector<int> RcbPartitioner::partition(const ElementGraph& graph, int nParts) const {
  if (nParts < 1) throw DimensionError("nParts must be >= 1");
  std::vector<int> out(graph.size(), 0);
  if (graph.size() == 0 || nParts == 1) return out;
  std::vector<int> order(graph.size());
  for (int i = 0; i < graph.size(); ++i) order[i] = i;
  rcbRecurse(graph, order, 0, graph.size(), 0, nParts, out);
  return out;
}

std::vector<int> PrescribedPartitioner::partition(const ElementGraph& graph, int nParts) const {
  if (static_cast<int>(parts_.size()) != graph.size())
    throw DimensionError("prescribed partition size does not match element count");
  for (int p : parts_)
    if (p < 0 || p >= nParts) throw DimensionError("prescribed part id out of range");
  return parts_;
}

} // namespace curv
