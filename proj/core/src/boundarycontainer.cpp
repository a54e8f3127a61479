#include "curv/boundarycontainer.hpp"

#include <algorithm>
#include <set>

#include "curv/errors.hpp"
#include "curv/refsimplex.hpp"

namespace curv {

CurvilinearGeometry RemoteBoundaryFace::geometry(int worldDim) const {
  // deduce the face dimension from the vertex count and order
  for (int dim = 1; dim <= 2; ++dim)
    if (simplexNodeCount(dim, order) == static_cast<int>(vertexPositions.size()))
      return CurvilinearGeometry(dim, worldDim, order, vertexPositions);
  throw DimensionError("remote boundary face has an inconsistent vertex count");
}

Vec RemoteBoundaryFace::unitOuterNormal(int worldDim, const Vec& rFace) const {
  const Vec raw = geometry(worldDim).surfaceNormal(rFace);
  const double len = raw.twoNorm();
  if (len == 0.0) throw ConvergenceError("degenerate boundary face normal");
  return raw * (orientation / len);
}

namespace {

struct FaceHeaderWire {
  GlobalIndex gid;
  std::int32_t order;
  std::int32_t physicalTag;
  std::int32_t orientation;
  std::int32_t nVertices;
  std::int32_t nEdges;
  std::int32_t nCorners;
};

struct GidWire {
  GlobalIndex gid;
};

struct VertexWire {
  GlobalIndex gid;
  double x, y, z;
};

} // namespace

GlobalBoundaryContainer::GlobalBoundaryContainer(const CurvGrid& grid, bool isDomainBoundary,
                                                 int volumeTag, int surfaceTag) {
  const GridStorage& s = grid.storage();
  Communicator& comm = grid.comm();
  worldDim_ = s.worldDim;

  if (!isDomainBoundary && surfaceTag < 0)
    throw DimensionError("an interior boundary selection needs a surface tag");

  // validate the surface tag against the union of tags over all ranks
  if (!isDomainBoundary) {
    std::vector<std::int32_t> myTags;
    for (const FaceRec& f : s.faces)
      if (f.interiorBoundarySurface) myTags.push_back(f.physicalTag);
    std::sort(myTags.begin(), myTags.end());
    myTags.erase(std::unique(myTags.begin(), myTags.end()), myTags.end());
    std::vector<int> lens;
    const auto all = allGather(comm, myTags, lens, 50);
    if (!std::count(all.begin(), all.end(), surfaceTag))
      throw Error("surface tag " + std::to_string(surfaceTag) + " does not exist in the mesh");
  }

  auto selected = [&](const FaceRec& f) {
    if (f.pk == PartitionKind::Ghost) return false;
    if (isDomainBoundary) return f.pk == PartitionKind::DomainBoundary;
    return f.interiorBoundarySurface && f.physicalTag == surfaceTag;
  };

  for (int i = 0; i < static_cast<int>(s.faces.size()); ++i)
    if (selected(s.faces[i])) localFaces_.push_back(i);

  // broadcast the faces this rank owns
  std::vector<FaceHeaderWire> headers;
  std::vector<VertexWire> verts;
  std::vector<GidWire> edges, corners;
  for (int i : localFaces_) {
    const FaceRec& f = s.faces[i];
    const auto& sharers = s.pbNeighbors[1][i];
    if (!sharers.empty() && sharers[0] < comm.rank()) continue; // the lower rank broadcasts

    const ElementRec& parent = s.elements[f.parentElement];
    const auto vids = s.entityVertexIds(1, i);

    // orientation: does the face tangent cross point away from the
    // selected volume side?
    const Vec rc = refsimplex::center(s.meshDim - 1);
    const Vec outward = s.faceOuterNormal(i, rc);
    const Vec cross = s.entityGeometry(1, i).surfaceNormal(rc);
    double orient = outward.dot(cross) > 0 ? 1.0 : -1.0;
    if (!isDomainBoundary && volumeTag >= 0 && parent.physicalTag != volumeTag) orient = -orient;

    FaceHeaderWire h{};
    h.gid = f.globalIndex;
    h.order = parent.order;
    h.physicalTag = f.physicalTag;
    h.orientation = orient > 0 ? 1 : -1;
    h.nVertices = static_cast<std::int32_t>(vids.size());
    h.nCorners = s.meshDim;
    h.nEdges = s.meshDim == 3 ? 3 : 0;
    headers.push_back(h);

    for (int v : vids) {
      VertexWire w{};
      w.gid = s.vertices[v].globalIndex;
      const Vec& p = s.vertices[v].position;
      for (int d = 0; d < s.worldDim; ++d) (&w.x)[d] = p[d];
      verts.push_back(w);
    }
    const auto faceCorners = s.entityCornerVertices(1, i);
    for (int v : faceCorners) corners.push_back({s.vertices[v].globalIndex});
    if (s.meshDim == 3) {
      // the face's edges, keyed through the parent corner table
      const auto& fc = refsimplex::subentityCorners(3, 1, f.subIndexInParent);
      const auto parentCorners = s.entityCornerVertices(0, f.parentElement);
      for (const auto& e : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        const CornerKey key = CornerKey::of({s.vertices[parentCorners[fc[e.first]]].globalIndex,
                                             s.vertices[parentCorners[fc[e.second]]].globalIndex});
        edges.push_back({s.edges[s.edgeByKey.at(key)].globalIndex});
      }
    }
  }

  std::vector<int> lens;
  const auto allHeaders = allGather(comm, headers, lens, 51);
  const auto allVerts = allGather(comm, verts, lens, 52);
  const auto allEdges = allGather(comm, edges, lens, 53);
  const auto allCorners = allGather(comm, corners, lens, 54);

  std::set<GlobalIndex> localGids;
  for (int i : localFaces_) localGids.insert(s.faces[i].globalIndex);

  std::size_t iv = 0, ie = 0, ic = 0;
  for (const FaceHeaderWire& h : allHeaders) {
    RemoteBoundaryFace face;
    face.globalIndex = h.gid;
    face.order = h.order;
    face.physicalTag = h.physicalTag;
    face.orientation = h.orientation;
    for (int k = 0; k < h.nVertices; ++k) {
      const VertexWire& w = allVerts[iv++];
      Vec p(s.worldDim);
      for (int d = 0; d < s.worldDim; ++d) p[d] = (&w.x)[d];
      face.vertexPositions.push_back(p);
      face.vertexGids.push_back(w.gid);
    }
    for (int k = 0; k < h.nEdges; ++k) face.edgeGids.push_back(allEdges[ie++].gid);
    for (int k = 0; k < h.nCorners; ++k) face.cornerGids.push_back(allCorners[ic++].gid);
    if (!localGids.count(h.gid)) faces_.push_back(std::move(face));
  }
  std::sort(faces_.begin(), faces_.end(),
            [](const RemoteBoundaryFace& a, const RemoteBoundaryFace& b) {
              return a.globalIndex < b.globalIndex;
            });
}

} // namespace curv
