#include "curv/gridstorage.hpp"

#include <algorithm>

#include "curv/errors.hpp"
#include "curv/refsimplex.hpp"

namespace curv {

const char* partitionKindName(PartitionKind k) {
  switch (k) {
  case PartitionKind::Interior: return "interior";
  case PartitionKind::ProcessBoundary: return "process-boundary";
  case PartitionKind::DomainBoundary: return "domain-boundary";
  case PartitionKind::InteriorBoundary: return "interior-boundary";
  case PartitionKind::Ghost: return "ghost";
  }
  return "?";
}

CornerKey CornerKey::of(std::vector<GlobalIndex> corners) {
  if (corners.size() > 4) throw DimensionError("corner key supports at most 4 corners");
  std::sort(corners.begin(), corners.end());
  CornerKey k;
  k.n = static_cast<std::int32_t>(corners.size());
  for (size_t i = 0; i < corners.size(); ++i) k.ids[i] = corners[i];
  return k;
}

int GridStorage::entityCount(int codim) const {
  if (codim == 0) return static_cast<int>(elements.size());
  if (codim == 1) return static_cast<int>(faces.size());
  if (codim == meshDim) return static_cast<int>(vertices.size());
  if (codim == 2 && meshDim == 3) return static_cast<int>(edges.size());
  throw DimensionError("invalid codimension " + std::to_string(codim));
}

GlobalIndex GridStorage::globalIndex(int codim, int i) const {
  if (codim == 0) return elements[i].globalIndex;
  if (codim == 1) return faces[i].globalIndex;
  if (codim == meshDim) return vertices[i].globalIndex;
  if (codim == 2 && meshDim == 3) return edges[i].globalIndex;
  throw DimensionError("invalid codimension");
}

PartitionKind GridStorage::partitionKind(int codim, int i) const {
  if (codim == 0) return elements[i].pk;
  if (codim == 1) return faces[i].pk;
  if (codim == meshDim) return vertices[i].kind;
  if (codim == 2 && meshDim == 3) return edges[i].pk;
  throw DimensionError("invalid codimension");
}

int GridStorage::physicalTag(int codim, int i) const {
  if (codim == 0) return elements[i].physicalTag;
  if (codim == 1) return faces[i].physicalTag;
  return -1;
}

std::vector<int> GridStorage::entityCornerVertices(int codim, int localIndex) const {
  if (codim == 0) {
    const ElementRec& e = elements[localIndex];
    std::vector<int> out;
    for (int c : refsimplex::cornerNodeIndices(meshDim, e.order)) out.push_back(e.vertexIds[c]);
    return out;
  }
  if (codim == meshDim) return {localIndex};
  const auto vids = entityVertexIds(codim, localIndex);
  const int parent = codim == 1 ? faces[localIndex].parentElement : edges[localIndex].parentElement;
  std::vector<int> out;
  for (int c : refsimplex::cornerNodeIndices(meshDim - codim, elements[parent].order))
    out.push_back(vids[c]);
  return out;
}

CornerKey GridStorage::entityCornerKey(int codim, int localIndex) const {
  std::vector<GlobalIndex> gids;
  for (int v : entityCornerVertices(codim, localIndex)) gids.push_back(vertices[v].globalIndex);
  return CornerKey::of(std::move(gids));
}

std::vector<int> GridStorage::entityVertexIds(int codim, int localIndex) const {
  if (codim == 0) return elements[localIndex].vertexIds;
  if (codim == meshDim) return {localIndex};
  int parent = -1, subIndex = -1;
  if (codim == 1) {
    parent = faces[localIndex].parentElement;
    subIndex = faces[localIndex].subIndexInParent;
  } else {
    parent = edges[localIndex].parentElement;
    subIndex = edges[localIndex].subIndexInParent;
  }
  const ElementRec& e = elements[parent];
  std::vector<int> out;
  for (int n : refsimplex::subentityNodeIndices(meshDim, e.order, codim, subIndex))
    out.push_back(e.vertexIds[n]);
  return out;
}

CurvilinearGeometry GridStorage::elementGeometry(int localIndex, bool precompute) const {
  const ElementRec& e = elements[localIndex];
  std::vector<Vec> coords;
  coords.reserve(e.vertexIds.size());
  for (int v : e.vertexIds) coords.push_back(vertices[v].position);
  return CurvilinearGeometry(meshDim, worldDim, e.order, std::move(coords), precompute);
}

CurvilinearGeometry GridStorage::entityGeometry(int codim, int localIndex) const {
  if (codim == 0) return elementGeometry(localIndex);
  if (codim == meshDim)
    throw DimensionError("vertices have no geometry object; use the position directly");
  const int parent = codim == 1 ? faces[localIndex].parentElement : edges[localIndex].parentElement;
  const ElementRec& e = elements[parent];
  const auto vids = entityVertexIds(codim, localIndex);
  std::vector<Vec> coords;
  coords.reserve(vids.size());
  for (int v : vids) coords.push_back(vertices[v].position);
  return CurvilinearGeometry(meshDim - codim, worldDim, e.order, std::move(coords));
}

Vec GridStorage::faceOuterNormal(int faceIndex, const Vec& rFace) const {
  const FaceRec& f = faces[faceIndex];
  return elementGeometry(f.parentElement).subentityNormal(f.subIndexInParent, rFace);
}

int GridStorage::faceSecondParent(int faceIndex) const {
  const FaceRec& f = faces[faceIndex];
  if (f.secondParentElement < 0)
    throw Error("face " + std::to_string(faceIndex) +
                " is a domain boundary; it has no second parent");
  return f.secondParentElement;
}

std::vector<int> GridStorage::subset(int codim, PartitionKind kind) const {
  std::vector<int> out;
  for (int i = 0; i < entityCount(codim); ++i)
    if (partitionKind(codim, i) == kind) out.push_back(i);
  return out;
}

} // namespace curv
