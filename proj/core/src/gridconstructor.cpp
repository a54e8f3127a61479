#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "curv/errors.hpp"
#include "curv/grid.hpp"
#include "curv/refsimplex.hpp"

namespace curv {

/// Insertion data handed from the factory to the construction stages.
struct ConstructorInput {
  struct Entity {
    SimplexKind kind;
    std::vector<int> vertexIds;
    int order;
    int physicalTag;
    std::int64_t elementIndex;
    bool isDomainBoundary;
  };
  std::vector<Entity> elements;
  std::vector<Entity> boundary;
};

namespace {

// ---------------------------------------------------------------- wire types

struct QueryWire {
  CornerKey key;
  std::int32_t codim;
  std::int32_t response; // filled by the answering rank
};
static_assert(sizeof(QueryWire) == 48 && std::is_trivially_copyable_v<QueryWire>);

struct IndexWire {
  CornerKey key;
  GlobalIndex gid;
  std::int32_t codim;
  std::int32_t pad = 0;
};
static_assert(sizeof(IndexWire) == 56 && std::is_trivially_copyable_v<IndexWire>);

struct GhostHeaderWire {
  GlobalIndex elemGid;
  std::int64_t physicalTag;
  std::int32_t order;
  std::int32_t nPbFaces;
};
static_assert(sizeof(GhostHeaderWire) == 24);

struct FaceLinkWire {
  GlobalIndex faceGid;
  std::int32_t subIndexInGhost;
  std::int32_t pad = 0;
};

struct CoordWire {
  GlobalIndex gid;
  double x, y, z;
};

struct HolderWire {
  GlobalIndex gid;
  std::int32_t codim;
  std::int32_t holderRank;
};

enum InfoRole : std::int32_t { RoleHome = 0, RolePbSharer = 1, RoleHolder = 2 };

struct InfoWire {
  GlobalIndex gid;
  std::int32_t codim;
  std::int32_t role;
  std::int32_t rank;
  std::int32_t pad = 0;
};

enum PairKind : std::int32_t { PairPbPb = 0, PairIG = 1, PairGI = 2, PairPbG = 3, PairGPb = 4, PairGG = 5 };

struct MirrorWire {
  GlobalIndex gid;
  std::int32_t codim;
  std::int32_t pairKind;
  std::int32_t src;
  std::int32_t dst;
  auto operator<=>(const MirrorWire&) const = default;
};

// ---------------------------------------------------------------- helpers

std::vector<int> sortedUnion(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

class GridBuild {
public:
  GridBuild(GridStorage& s, Communicator& comm, TimingLog& log, CommMaps& maps)
      : s_(s), comm_(comm), log_(log), maps_(maps) {}

  void generateEntities(const ConstructorInput& in);
  void buildGlobalIndices();
  void buildGhosts();
  void buildIndexSubsets();
  void buildCommMaps();

private:
  // stage helpers
  void exchangePbCorners();
  void confirmSharedEntities();
  void assignOwnersAndEnumerate();
  void distributeSharedIndices();

  int ownerOf(const std::vector<int>& sharers, const CornerKey& key) const;
  std::vector<GlobalIndex> faceCornerGids(const ElementRec& e, int subIndex) const;
  std::vector<GlobalIndex> edgeCornerGids(const ElementRec& e, int subIndex) const;
  std::vector<int> elementSubentityLocal(int elem, int codim) const;
  void verifyCommMaps();

  GridStorage& s_;
  Communicator& comm_;
  TimingLog& log_;
  CommMaps& maps_;

  // scratch shared between stages
  std::map<GlobalIndex, std::vector<int>> vertexPbRanks_; // vertex gid -> sharing ranks
  std::vector<char> facePbCandidate_;
  std::map<int, std::vector<std::pair<int, std::vector<FaceLinkWire>>>> ghostPlan_; // dst -> (elem, links)
};

std::vector<GlobalIndex> cornerGidsOf(const GridStorage& s, const ElementRec& e,
                                      const std::vector<int>& cornersWithin) {
  const auto cornerIdx = refsimplex::cornerNodeIndices(s.meshDim, e.order);
  std::vector<GlobalIndex> out;
  out.reserve(cornersWithin.size());
  for (int c : cornersWithin) out.push_back(s.vertices[e.vertexIds[cornerIdx[c]]].globalIndex);
  return out;
}

std::vector<GlobalIndex> GridBuild::faceCornerGids(const ElementRec& e, int subIndex) const {
  return cornerGidsOf(s_, e, refsimplex::subentityCorners(s_.meshDim, 1, subIndex));
}

std::vector<GlobalIndex> GridBuild::edgeCornerGids(const ElementRec& e, int subIndex) const {
  return cornerGidsOf(s_, e, refsimplex::subentityCorners(s_.meshDim, 2, subIndex));
}

// ---------------------------------------------------------------- stage 1

void GridBuild::generateEntities(const ConstructorInput& in) {
  ScopedTimer t(log_, stage::entityGeneration);

  for (const auto& el : in.elements) {
    if (simplexDim(el.kind) != s_.meshDim)
      throw DimensionError("inserted element dimension does not match the grid dimension");
    ElementRec rec;
    rec.kind = el.kind;
    rec.order = el.order;
    rec.physicalTag = el.physicalTag;
    rec.vertexIds = el.vertexIds;
    rec.globalIndex = s_.useFileElementIndex ? el.elementIndex : -1;
    rec.pk = PartitionKind::Interior;
    s_.elements.push_back(std::move(rec));
  }
  s_.nInteriorElements = static_cast<int>(s_.elements.size());

  // faces and edges from the element subentity tables, keyed by sorted
  // corner global indices
  for (int e = 0; e < s_.nInteriorElements; ++e) {
    const ElementRec& el = s_.elements[e];
    for (int f = 0; f < refsimplex::numSubentities(s_.meshDim, 1); ++f) {
      const CornerKey key = CornerKey::of(faceCornerGids(el, f));
      auto it = s_.faceByKey.find(key);
      if (it == s_.faceByKey.end()) {
        FaceRec rec;
        rec.parentElement = e;
        rec.subIndexInParent = f;
        s_.faceByKey.emplace(key, static_cast<int>(s_.faces.size()));
        s_.faces.push_back(rec);
      } else {
        FaceRec& rec = s_.faces[it->second];
        if (rec.secondParentElement >= 0)
          throw ProtocolError("face shared by more than two elements (inconsistent insertion)");
        rec.secondParentElement = e;
      }
    }
    if (s_.meshDim == 3)
      for (int g = 0; g < refsimplex::numSubentities(3, 2); ++g) {
        const CornerKey key = CornerKey::of(edgeCornerGids(el, g));
        if (!s_.edgeByKey.count(key)) {
          EdgeRec rec;
          rec.parentElement = e;
          rec.subIndexInParent = g;
          s_.edgeByKey.emplace(key, static_cast<int>(s_.edges.size()));
          s_.edges.push_back(rec);
        }
      }
  }

  // boundary segments mark their face records
  for (const auto& b : in.boundary) {
    if (simplexDim(b.kind) != s_.meshDim - 1)
      throw DimensionError("boundary segment dimension must be one below the grid dimension");
    std::vector<GlobalIndex> gids;
    for (int c : refsimplex::cornerNodeIndices(s_.meshDim - 1, b.order))
      gids.push_back(s_.vertices[b.vertexIds[c]].globalIndex);
    const CornerKey key = CornerKey::of(std::move(gids));
    const auto it = s_.faceByKey.find(key);
    if (it == s_.faceByKey.end())
      throw ProtocolError("boundary segment inserted without its parent element on this rank");
    FaceRec& rec = s_.faces[it->second];
    rec.physicalTag = b.physicalTag;
    if (b.isDomainBoundary) {
      rec.boundary = FaceBoundaryKind::Domain;
      rec.pk = PartitionKind::DomainBoundary;
      if (rec.secondParentElement >= 0)
        throw ProtocolError("domain boundary face has two parent elements");
    } else {
      rec.interiorBoundarySurface = true;
    }
  }

  // process-boundary candidates: one local parent and not a domain boundary
  facePbCandidate_.assign(s_.faces.size(), 0);
  for (size_t f = 0; f < s_.faces.size(); ++f)
    if (s_.faces[f].secondParentElement < 0 && s_.faces[f].pk != PartitionKind::DomainBoundary)
      facePbCandidate_[f] = 1;

  // interior-boundary kind for fully local tagged faces
  for (FaceRec& rec : s_.faces)
    if (rec.interiorBoundarySurface && rec.secondParentElement >= 0)
      rec.pk = PartitionKind::InteriorBoundary;

  // grid corner subset
  std::set<int> corners;
  for (int e = 0; e < s_.nInteriorElements; ++e) {
    const auto cornerIdx = refsimplex::cornerNodeIndices(s_.meshDim, s_.elements[e].order);
    for (int c : cornerIdx) corners.insert(s_.elements[e].vertexIds[c]);
  }
  s_.cornerVertexIds.assign(corners.begin(), corners.end());

  // vertex global-to-local
  for (size_t v = 0; v < s_.vertices.size(); ++v)
    s_.globalToLocal[s_.meshDim][s_.vertices[v].globalIndex] = static_cast<int>(v);
}

// ---------------------------------------------------------------- stage 2

void GridBuild::exchangePbCorners() {
  // corners of PB-candidate faces, broadcast to every rank
  std::set<GlobalIndex> mine;
  for (size_t f = 0; f < s_.faces.size(); ++f) {
    if (!facePbCandidate_[f]) continue;
    const FaceRec& rec = s_.faces[f];
    for (GlobalIndex g : faceCornerGids(s_.elements[rec.parentElement], rec.subIndexInParent))
      mine.insert(g);
  }
  std::vector<GlobalIndex> list(mine.begin(), mine.end());
  std::vector<int> lens;
  const auto all = allGather(comm_, list, lens, 10);

  std::size_t offset = 0;
  for (int r = 0; r < comm_.size(); ++r) {
    for (int i = 0; i < lens[r]; ++i) {
      const GlobalIndex g = all[offset + i];
      if (r != comm_.rank() && mine.count(g)) vertexPbRanks_[g].push_back(r);
    }
    offset += lens[r];
  }
  for (auto& [gid, ranks] : vertexPbRanks_) {
    ranks = sortedUnion(std::move(ranks));
    const int local = s_.globalToLocal[s_.meshDim].at(gid);
    s_.vertices[local].kind = PartitionKind::ProcessBoundary;
  }
}

void GridBuild::confirmSharedEntities() {
  struct Candidate {
    int codim;
    int localIndex;
    CornerKey key;
    std::vector<int> provisional;
  };
  std::vector<Candidate> candidates;

  auto cornerRanks = [&](const std::vector<GlobalIndex>& gids) -> std::vector<int> {
    // intersection of the sharing rank sets of all corners
    std::vector<int> acc;
    for (size_t i = 0; i < gids.size(); ++i) {
      const auto it = vertexPbRanks_.find(gids[i]);
      if (it == vertexPbRanks_.end()) return {};
      if (i == 0) {
        acc = it->second;
      } else {
        std::vector<int> next;
        std::set_intersection(acc.begin(), acc.end(), it->second.begin(), it->second.end(),
                              std::back_inserter(next));
        acc = std::move(next);
      }
      if (acc.empty()) return {};
    }
    return acc;
  };

  for (size_t f = 0; f < s_.faces.size(); ++f) {
    if (!facePbCandidate_[f]) continue;
    const FaceRec& rec = s_.faces[f];
    const auto gids = faceCornerGids(s_.elements[rec.parentElement], rec.subIndexInParent);
    Candidate c{1, static_cast<int>(f), CornerKey::of(gids), cornerRanks(gids)};
    if (c.provisional.empty())
      throw ProtocolError("process-boundary face candidate has no provisional neighbor "
                          "(boundary segment missing from the mesh?)");
    candidates.push_back(std::move(c));
  }
  if (s_.meshDim == 3)
    for (size_t g = 0; g < s_.edges.size(); ++g) {
      const EdgeRec& rec = s_.edges[g];
      const auto gids = edgeCornerGids(s_.elements[rec.parentElement], rec.subIndexInParent);
      auto ranks = cornerRanks(gids);
      if (ranks.empty()) continue;
      candidates.push_back({2, static_cast<int>(g), CornerKey::of(gids), std::move(ranks)});
    }

  // query round: ask every provisional neighbor whether it has the entity
  std::vector<QueryWire> out;
  std::vector<int> lengthsIn(comm_.size(), 0);
  std::vector<std::vector<const Candidate*>> perDest(comm_.size());
  for (const Candidate& c : candidates)
    for (int r : c.provisional) perDest[r].push_back(&c);
  for (int r = 0; r < comm_.size(); ++r) {
    std::sort(perDest[r].begin(), perDest[r].end(), [](const Candidate* a, const Candidate* b) {
      return std::tie(a->codim, a->key) < std::tie(b->codim, b->key);
    });
    lengthsIn[r] = static_cast<int>(perDest[r].size());
    for (const Candidate* c : perDest[r]) out.push_back({c->key, c->codim, 0});
  }
  std::vector<int> lengthsOut;
  auto queries = allToAll(comm_, out, lengthsIn, lengthsOut, 11);

  // answer in place and send back
  for (QueryWire& q : queries) {
    const auto& map = q.codim == 1 ? s_.faceByKey : s_.edgeByKey;
    q.response = map.count(q.key) ? 1 : 0;
  }
  std::vector<int> lengthsBack;
  const auto replies = allToAll(comm_, queries, lengthsOut, lengthsBack, 12);

  // replies arrive aligned with the queries sent per destination
  std::map<std::pair<int, CornerKey>, std::vector<int>> confirmed;
  std::size_t offset = 0;
  for (int r = 0; r < comm_.size(); ++r) {
    for (int i = 0; i < lengthsBack[r]; ++i) {
      const QueryWire& q = replies[offset + i];
      if (q.response) confirmed[{q.codim, q.key}].push_back(r);
    }
    offset += lengthsBack[r];
  }

  for (const Candidate& c : candidates) {
    const auto it = confirmed.find({c.codim, c.key});
    std::vector<int> ranks = it == confirmed.end() ? std::vector<int>{} : sortedUnion(it->second);
    if (c.codim == 1) {
      if (ranks.empty())
        throw ProtocolError("process-boundary face confirmed by no neighbor rank");
      if (ranks.size() > 1)
        throw ProtocolError("process-boundary face confirmed by several ranks (non-conforming mesh)");
      s_.faces[c.localIndex].pk = PartitionKind::ProcessBoundary;
      s_.pbNeighbors[1][c.localIndex] = ranks;
    } else if (!ranks.empty()) {
      s_.edges[c.localIndex].pk = PartitionKind::ProcessBoundary;
      s_.pbNeighbors[2][c.localIndex] = ranks;
    }
  }

  // vertex sharing sets become the codim-meshDim neighbor lists
  for (const auto& [gid, ranks] : vertexPbRanks_)
    s_.pbNeighbors[s_.meshDim][s_.globalToLocal[s_.meshDim].at(gid)] = ranks;
}

int GridBuild::ownerOf(const std::vector<int>& sharers, const CornerKey& key) const {
  std::vector<int> all = sharers;
  all.push_back(comm_.rank());
  all = sortedUnion(std::move(all));
  if (!s_.xorOwnership) return all[0];
  GlobalIndex h = 0;
  for (int i = 0; i < key.n; ++i) h ^= key.ids[i];
  for (int r : all) h ^= r;
  return all[static_cast<std::size_t>(h) % all.size()];
}

void GridBuild::assignOwnersAndEnumerate() {
  // per codim: count owned entities, prefix-shift by rank, enumerate in
  // corner-key order, send the result to the other sharers
  struct Owned {
    int codim;
    int localIndex;
    CornerKey key;
  };
  std::vector<Owned> owned;
  std::array<std::int64_t, 4> ownedCount{};

  auto consider = [&](int codim, int localIndex) {
    const auto& sharers = s_.pbNeighbors[codim][localIndex];
    const CornerKey key = s_.entityCornerKey(codim, localIndex);
    if (sharers.empty() || ownerOf(sharers, key) == comm_.rank()) {
      owned.push_back({codim, localIndex, key});
      ++ownedCount[codim];
    }
  };

  for (size_t f = 0; f < s_.faces.size(); ++f) consider(1, static_cast<int>(f));
  if (s_.meshDim == 3)
    for (size_t g = 0; g < s_.edges.size(); ++g) consider(2, static_cast<int>(g));
  if (!s_.useFileElementIndex)
    for (int e = 0; e < s_.nInteriorElements; ++e) consider(0, e);

  std::vector<std::int64_t> mine(ownedCount.begin(), ownedCount.end());
  std::vector<int> lens;
  const auto allCounts = allGather(comm_, mine, lens, 13);

  std::array<GlobalIndex, 4> base{};
  for (int r = 0; r < comm_.rank(); ++r)
    for (int c = 0; c < 4; ++c) base[c] += allCounts[r * 4 + c];

  std::sort(owned.begin(), owned.end(), [](const Owned& a, const Owned& b) {
    return std::tie(a.codim, a.key) < std::tie(b.codim, b.key);
  });
  std::array<GlobalIndex, 4> next = base;
  for (const Owned& o : owned) {
    const GlobalIndex gid = next[o.codim]++;
    if (o.codim == 0)
      s_.elements[o.localIndex].globalIndex = gid;
    else if (o.codim == 1)
      s_.faces[o.localIndex].globalIndex = gid;
    else
      s_.edges[o.localIndex].globalIndex = gid;
  }
}

void GridBuild::distributeSharedIndices() {
  std::vector<IndexWire> out;
  std::vector<int> lengthsIn(comm_.size(), 0);
  std::vector<std::vector<IndexWire>> perDest(comm_.size());
  auto offer = [&](int codim, int localIndex, GlobalIndex gid) {
    for (int r : s_.pbNeighbors[codim][localIndex])
      perDest[r].push_back({s_.entityCornerKey(codim, localIndex), gid, codim, 0});
  };
  for (size_t f = 0; f < s_.faces.size(); ++f)
    if (s_.faces[f].globalIndex >= 0 && !s_.pbNeighbors[1][f].empty()) offer(1, static_cast<int>(f), s_.faces[f].globalIndex);
  if (s_.meshDim == 3)
    for (size_t g = 0; g < s_.edges.size(); ++g)
      if (s_.edges[g].globalIndex >= 0 && !s_.pbNeighbors[2][g].empty())
        offer(2, static_cast<int>(g), s_.edges[g].globalIndex);

  for (int r = 0; r < comm_.size(); ++r) {
    std::sort(perDest[r].begin(), perDest[r].end(), [](const IndexWire& a, const IndexWire& b) {
      return std::tie(a.codim, a.key) < std::tie(b.codim, b.key);
    });
    lengthsIn[r] = static_cast<int>(perDest[r].size());
    out.insert(out.end(), perDest[r].begin(), perDest[r].end());
  }
  std::vector<int> lengthsOut;
  const auto received = allToAll(comm_, out, lengthsIn, lengthsOut, 14);
  for (const IndexWire& w : received) {
    const auto& map = w.codim == 1 ? s_.faceByKey : s_.edgeByKey;
    const auto it = map.find(w.key);
    if (it == map.end()) throw ProtocolError("received a global index for an unknown shared entity");
    if (w.codim == 1)
      s_.faces[it->second].globalIndex = w.gid;
    else
      s_.edges[it->second].globalIndex = w.gid;
  }

  // fill the global-to-local maps
  for (size_t f = 0; f < s_.faces.size(); ++f) {
    if (s_.faces[f].globalIndex < 0) throw ProtocolError("face left without a global index");
    s_.globalToLocal[1][s_.faces[f].globalIndex] = static_cast<int>(f);
  }
  if (s_.meshDim == 3)
    for (size_t g = 0; g < s_.edges.size(); ++g) {
      if (s_.edges[g].globalIndex < 0) throw ProtocolError("edge left without a global index");
      s_.globalToLocal[2][s_.edges[g].globalIndex] = static_cast<int>(g);
    }
  for (int e = 0; e < s_.nInteriorElements; ++e) {
    if (s_.elements[e].globalIndex < 0) throw ProtocolError("element left without a global index");
    s_.globalToLocal[0][s_.elements[e].globalIndex] = e;
  }
}

void GridBuild::buildGlobalIndices() {
  ScopedTimer t(log_, stage::globalIndices);
  s_.pbNeighbors[0].assign(s_.elements.size(), {});
  s_.pbNeighbors[1].assign(s_.faces.size(), {});
  if (s_.meshDim == 3) s_.pbNeighbors[2].assign(s_.edges.size(), {});
  s_.pbNeighbors[s_.meshDim].assign(s_.vertices.size(), {});
  exchangePbCorners();
  confirmSharedEntities();
  assignOwnersAndEnumerate();
  distributeSharedIndices();
}

// ---------------------------------------------------------------- stage 3

void GridBuild::buildGhosts() {
  ScopedTimer t(log_, stage::ghostElements);
  if (!s_.withGhosts) return;
  const int n = comm_.size();
  const int nFaceSubs = refsimplex::numSubentities(s_.meshDim, 1);
  const int nEdgeSubs = s_.meshDim == 3 ? refsimplex::numSubentities(3, 2) : 0;

  // group this rank's PB faces by (neighbor rank, parent element)
  std::map<int, std::map<int, std::vector<FaceLinkWire>>> plan; // dst -> elem -> links
  for (size_t f = 0; f < s_.faces.size(); ++f) {
    if (s_.faces[f].pk != PartitionKind::ProcessBoundary) continue;
    const int dst = s_.pbNeighbors[1][f][0];
    plan[dst][s_.faces[f].parentElement].push_back(
        {s_.faces[f].globalIndex, s_.faces[f].subIndexInParent, 0});
  }

  // headers, vertex ids, subentity ids and face links, one exchange each
  std::vector<GhostHeaderWire> headers;
  std::vector<GlobalIndex> vertexIds, faceIds, edgeIds;
  std::vector<FaceLinkWire> links;
  std::vector<int> lenHeaders(n, 0), lenVerts(n, 0), lenFaces(n, 0), lenEdges(n, 0), lenLinks(n, 0);
  for (int dst = 0; dst < n; ++dst) {
    const auto it = plan.find(dst);
    if (it == plan.end()) continue;
    for (const auto& [elem, elemLinks] : it->second) {
      const ElementRec& e = s_.elements[elem];
      headers.push_back({e.globalIndex, e.physicalTag, e.order, static_cast<std::int32_t>(elemLinks.size())});
      ++lenHeaders[dst];
      for (int v : e.vertexIds) vertexIds.push_back(s_.vertices[v].globalIndex);
      lenVerts[dst] += static_cast<int>(e.vertexIds.size());
      for (int fsub = 0; fsub < nFaceSubs; ++fsub) {
        const CornerKey key = CornerKey::of(faceCornerGids(e, fsub));
        faceIds.push_back(s_.faces[s_.faceByKey.at(key)].globalIndex);
      }
      lenFaces[dst] += nFaceSubs;
      for (int gsub = 0; gsub < nEdgeSubs; ++gsub) {
        const CornerKey key = CornerKey::of(edgeCornerGids(e, gsub));
        edgeIds.push_back(s_.edges[s_.edgeByKey.at(key)].globalIndex);
      }
      lenEdges[dst] += nEdgeSubs;
      links.insert(links.end(), elemLinks.begin(), elemLinks.end());
      lenLinks[dst] += static_cast<int>(elemLinks.size());
    }
  }

  std::vector<int> outHeaders, outVerts, outFaces, outEdges, outLinks;
  const auto rxHeaders = allToAll(comm_, headers, lenHeaders, outHeaders, 20);
  const auto rxVerts = allToAll(comm_, vertexIds, lenVerts, outVerts, 21);
  const auto rxFaces = allToAll(comm_, faceIds, lenFaces, outFaces, 22);
  const auto rxEdges = allToAll(comm_, edgeIds, lenEdges, outEdges, 23);
  const auto rxLinks = allToAll(comm_, links, lenLinks, outLinks, 24);

  // integrate the ghosts, walking all four streams in step
  std::map<int, std::vector<GlobalIndex>> missingFrom; // src -> vertex gids we lack
  std::size_t ih = 0, iv = 0, ifc = 0, ie = 0, il = 0;
  for (int src = 0; src < n; ++src) {
    for (int k = 0; k < outHeaders[src]; ++k) {
      const GhostHeaderWire& h = rxHeaders[ih++];
      const int nVerts = simplexNodeCount(s_.meshDim, h.order);
      if (s_.globalToLocal[0].count(h.elemGid))
        throw ProtocolError("ghost element arrived for an element already present");

      ElementRec ghost;
      ghost.globalIndex = h.elemGid;
      ghost.kind = s_.meshDim == 3 ? SimplexKind::Tetrahedron : SimplexKind::Triangle;
      ghost.order = h.order;
      ghost.physicalTag = static_cast<int>(h.physicalTag);
      ghost.pk = PartitionKind::Ghost;
      for (int v = 0; v < nVerts; ++v) {
        const GlobalIndex gid = rxVerts[iv++];
        auto it = s_.globalToLocal[s_.meshDim].find(gid);
        if (it == s_.globalToLocal[s_.meshDim].end()) {
          VertexRec vr;
          vr.globalIndex = gid;
          vr.kind = PartitionKind::Ghost;
          vr.position = Vec(s_.worldDim);
          const int local = static_cast<int>(s_.vertices.size());
          s_.vertices.push_back(vr);
          s_.globalToLocal[s_.meshDim][gid] = local;
          missingFrom[src].push_back(gid);
          ghost.vertexIds.push_back(local);
        } else {
          ghost.vertexIds.push_back(it->second);
        }
      }
      const int ghostLocal = static_cast<int>(s_.elements.size());
      s_.elements.push_back(std::move(ghost));
      s_.globalToLocal[0][h.elemGid] = ghostLocal;

      for (int fsub = 0; fsub < nFaceSubs; ++fsub) {
        const GlobalIndex gid = rxFaces[ifc++];
        auto it = s_.globalToLocal[1].find(gid);
        if (it == s_.globalToLocal[1].end()) {
          FaceRec fr;
          fr.globalIndex = gid;
          fr.pk = PartitionKind::Ghost;
          fr.parentElement = ghostLocal;
          fr.subIndexInParent = fsub;
          const int local = static_cast<int>(s_.faces.size());
          s_.faces.push_back(fr);
          s_.globalToLocal[1][gid] = local;
          s_.faceByKey[CornerKey::of(faceCornerGids(s_.elements[ghostLocal], fsub))] = local;
        } else if (s_.faces[it->second].pk == PartitionKind::Ghost &&
                   s_.faces[it->second].secondParentElement < 0 &&
                   s_.faces[it->second].parentElement != ghostLocal) {
          s_.faces[it->second].secondParentElement = ghostLocal; // two ghosts meet
        }
      }
      for (int gsub = 0; gsub < nEdgeSubs; ++gsub) {
        const GlobalIndex gid = rxEdges[ie++];
        if (!s_.globalToLocal[2].count(gid)) {
          EdgeRec er;
          er.globalIndex = gid;
          er.pk = PartitionKind::Ghost;
          er.parentElement = ghostLocal;
          er.subIndexInParent = gsub;
          const int local = static_cast<int>(s_.edges.size());
          s_.edges.push_back(er);
          s_.globalToLocal[2][gid] = local;
          s_.edgeByKey[CornerKey::of(edgeCornerGids(s_.elements[ghostLocal], gsub))] = local;
        }
      }
      for (int lk = 0; lk < h.nPbFaces; ++lk) {
        const FaceLinkWire& link = rxLinks[il++];
        const auto it = s_.globalToLocal[1].find(link.faceGid);
        if (it == s_.globalToLocal[1].end())
          throw ProtocolError("ghost element references an unknown process-boundary face");
        s_.faces[it->second].secondParentElement = ghostLocal;
      }
    }
  }

  // coordinate completion: ask each sender for the vertex positions we lack
  std::vector<GlobalIndex> requests;
  std::vector<int> lenReq(n, 0);
  for (int src = 0; src < n; ++src) {
    const auto it = missingFrom.find(src);
    if (it == missingFrom.end()) continue;
    lenReq[src] = static_cast<int>(it->second.size());
    requests.insert(requests.end(), it->second.begin(), it->second.end());
  }
  std::vector<int> outReq;
  const auto rxReq = allToAll(comm_, requests, lenReq, outReq, 25);

  std::vector<CoordWire> coords;
  for (const GlobalIndex gid : rxReq) {
    const int local = s_.globalToLocal[s_.meshDim].at(gid);
    const Vec& p = s_.vertices[local].position;
    CoordWire c{gid, 0, 0, 0};
    for (int d = 0; d < s_.worldDim; ++d) (&c.x)[d] = p[d];
    coords.push_back(c);
  }
  std::vector<int> outCoord;
  const auto rxCoord = allToAll(comm_, coords, outReq, outCoord, 26);
  for (const CoordWire& c : rxCoord) {
    const int local = s_.globalToLocal[s_.meshDim].at(c.gid);
    Vec p(s_.worldDim);
    for (int d = 0; d < s_.worldDim; ++d) p[d] = (&c.x)[d];
    s_.vertices[local].position = p;
  }

  // keep the send plan for the communication-map stage
  for (auto& [dst, elems] : plan) {
    auto& flat = ghostPlan_[dst];
    for (auto& [elem, ls] : elems) flat.emplace_back(elem, ls);
  }
}

// ---------------------------------------------------------------- stage 4

void GridBuild::buildIndexSubsets() {
  ScopedTimer t(log_, stage::indexSubsets);
  // refresh the corner subset now that ghost vertices exist
  std::set<int> corners(s_.cornerVertexIds.begin(), s_.cornerVertexIds.end());
  for (size_t e = s_.nInteriorElements; e < s_.elements.size(); ++e) {
    const auto cornerIdx = refsimplex::cornerNodeIndices(s_.meshDim, s_.elements[e].order);
    for (int c : cornerIdx) corners.insert(s_.elements[e].vertexIds[c]);
  }
  s_.cornerVertexIds.assign(corners.begin(), corners.end());
}

// ---------------------------------------------------------------- stage 5

std::vector<int> GridBuild::elementSubentityLocal(int elem, int codim) const {
  const ElementRec& e = s_.elements[elem];
  std::vector<int> out;
  if (codim == 0) {
    out.push_back(elem);
  } else if (codim == 1) {
    for (int f = 0; f < refsimplex::numSubentities(s_.meshDim, 1); ++f)
      out.push_back(s_.faceByKey.at(CornerKey::of(faceCornerGids(e, f))));
  } else if (codim == 2 && s_.meshDim == 3) {
    for (int g = 0; g < refsimplex::numSubentities(3, 2); ++g)
      out.push_back(s_.edgeByKey.at(CornerKey::of(edgeCornerGids(e, g))));
  } else if (codim == s_.meshDim) {
    const auto cornerIdx = refsimplex::cornerNodeIndices(s_.meshDim, e.order);
    for (int c : cornerIdx) out.push_back(e.vertexIds[c]);
  }
  return out;
}

void GridBuild::buildCommMaps() {
  ScopedTimer t(log_, stage::commMaps);
  const int n = comm_.size();
  const int nCodims = s_.nCodims();

  maps_.sets.assign(nCodims, {});
  for (int c = 0; c < nCodims; ++c) {
    maps_.sets[c].assign(s_.entityCount(c), {});
    s_.pbNeighbors[c].resize(s_.entityCount(c)); // ghosts were appended
  }

  // ghost destinations of my interior elements
  std::map<int, std::vector<int>> elemGhostDest; // elem -> ranks
  for (const auto& [dst, elems] : ghostPlan_)
    for (const auto& [elem, links] : elems) elemGhostDest[elem].push_back(dst);

  // local contribution to the ghost-holder set of every subentity
  std::vector<std::map<int, std::vector<int>>> holders(nCodims); // codim -> local -> ranks
  for (const auto& [elem, dests] : elemGhostDest)
    for (int c = 0; c < nCodims; ++c)
      for (int sub : elementSubentityLocal(elem, c)) {
        auto& h = holders[c][sub];
        h.insert(h.end(), dests.begin(), dests.end());
      }

  // PB entities: union the contributions of all sharers
  {
    std::vector<HolderWire> out;
    std::vector<int> lengthsIn(n, 0);
    std::vector<std::vector<HolderWire>> perDest(n);
    for (int c = 0; c < nCodims; ++c)
      for (auto& [local, ranks] : holders[c]) {
        ranks = sortedUnion(std::move(ranks));
        if (s_.partitionKind(c, local) != PartitionKind::ProcessBoundary) continue;
        for (int sharer : s_.pbNeighbors[c][local])
          for (int h : ranks)
            perDest[sharer].push_back({s_.globalIndex(c, local), c, h});
      }
    for (int r = 0; r < n; ++r) {
      std::sort(perDest[r].begin(), perDest[r].end(), [](const HolderWire& a, const HolderWire& b) {
        return std::tie(a.codim, a.gid, a.holderRank) < std::tie(b.codim, b.gid, b.holderRank);
      });
      lengthsIn[r] = static_cast<int>(perDest[r].size());
      out.insert(out.end(), perDest[r].begin(), perDest[r].end());
    }
    std::vector<int> lengthsOut;
    const auto received = allToAll(comm_, out, lengthsIn, lengthsOut, 30);
    for (const HolderWire& w : received) {
      const auto it = s_.globalToLocal[w.codim].find(w.gid);
      if (it == s_.globalToLocal[w.codim].end())
        throw ProtocolError("holder contribution for an unknown shared entity");
      holders[w.codim][it->second].push_back(w.holderRank);
    }
  }

  // relation sets on the home/PB side, and owner -> holder notifications
  std::vector<InfoWire> info;
  std::vector<int> lenInfo(n, 0);
  std::vector<std::vector<InfoWire>> infoPerDest(n);
  for (int c = 0; c < nCodims; ++c)
    for (auto& [local, ranks] : holders[c]) {
      const PartitionKind pk = s_.partitionKind(c, local);
      if (pk == PartitionKind::Ghost) continue;
      std::vector<int> holderSet = sortedUnion(std::move(ranks));
      const auto& sharers = s_.pbNeighbors[c][local];
      // drop ranks that hold the entity as interior or process boundary
      std::vector<int> cleaned;
      for (int h : holderSet)
        if (h != comm_.rank() && std::find(sharers.begin(), sharers.end(), h) == sharers.end())
          cleaned.push_back(h);
      holderSet = std::move(cleaned);
      if (holderSet.empty()) continue;

      EntityRankSets& sets = maps_.sets[c][local];
      sets.ghostHolders = holderSet;

      // the owner tells every ghost holder who is involved with the entity
      const CornerKey key = s_.entityCornerKey(c, local);
      const bool owner = sharers.empty() || ownerOf(sharers, key) == comm_.rank();
      if (!owner) continue;
      const GlobalIndex gid = s_.globalIndex(c, local);
      for (int holder : holderSet) {
        auto& box = infoPerDest[holder];
        if (sharers.empty()) {
          box.push_back({gid, c, RoleHome, comm_.rank(), 0});
        } else {
          box.push_back({gid, c, RolePbSharer, comm_.rank(), 0});
          for (int sharer : sharers) box.push_back({gid, c, RolePbSharer, sharer, 0});
        }
        for (int h : holderSet) box.push_back({gid, c, RoleHolder, h, 0});
      }
    }
  for (int r = 0; r < n; ++r) {
    std::sort(infoPerDest[r].begin(), infoPerDest[r].end(), [](const InfoWire& a, const InfoWire& b) {
      return std::tie(a.codim, a.gid, a.role, a.rank) < std::tie(b.codim, b.gid, b.role, b.rank);
    });
    lenInfo[r] = static_cast<int>(infoPerDest[r].size());
    info.insert(info.end(), infoPerDest[r].begin(), infoPerDest[r].end());
  }
  std::vector<int> outInfo;
  const auto rxInfo = allToAll(comm_, info, lenInfo, outInfo, 31);
  for (const InfoWire& w : rxInfo) {
    const auto it = s_.globalToLocal[w.codim].find(w.gid);
    if (it == s_.globalToLocal[w.codim].end())
      throw ProtocolError("ghost relation notification for an unknown entity");
    EntityRankSets& sets = maps_.sets[w.codim][it->second];
    if (w.role == RoleHome)
      sets.home.push_back(w.rank);
    else if (w.role == RolePbSharer)
      sets.pbOwners.push_back(w.rank);
    else if (w.rank != comm_.rank())
      sets.ghostPeers.push_back(w.rank);
  }

  // PB <-> PB sets come straight from the neighbor lists
  for (int c = 0; c < nCodims; ++c)
    for (int i = 0; i < s_.entityCount(c); ++i) {
      EntityRankSets& sets = maps_.sets[c][i];
      if (s_.partitionKind(c, i) == PartitionKind::ProcessBoundary)
        sets.pbShare = s_.pbNeighbors[c][i];
      sets.home = sortedUnion(std::move(sets.home));
      sets.pbOwners = sortedUnion(std::move(sets.pbOwners));
      sets.ghostPeers = sortedUnion(std::move(sets.ghostPeers));
    }

  verifyCommMaps();
}

void GridBuild::verifyCommMaps() {
  std::vector<MirrorWire> mine;
  const int me = comm_.rank();
  for (int c = 0; c < s_.nCodims(); ++c)
    for (int i = 0; i < s_.entityCount(c); ++i) {
      const EntityRankSets& sets = maps_.sets[c][i];
      const GlobalIndex gid = s_.globalIndex(c, i);
      const PartitionKind pk = s_.partitionKind(c, i);
      for (int b : sets.pbShare) mine.push_back({gid, c, PairPbPb, me, b});
      for (int b : sets.ghostHolders)
        mine.push_back({gid, c, pk == PartitionKind::ProcessBoundary ? PairPbG : PairIG, me, b});
      for (int b : sets.home) mine.push_back({gid, c, PairGI, me, b});
      for (int b : sets.pbOwners) mine.push_back({gid, c, PairGPb, me, b});
      for (int b : sets.ghostPeers) mine.push_back({gid, c, PairGG, me, b});
    }
  std::vector<int> lens;
  const auto all = allGather(comm_, mine, lens, 32);
  std::set<MirrorWire> have(all.begin(), all.end());
  auto mirrored = [](const MirrorWire& w) {
    MirrorWire m = w;
    std::swap(m.src, m.dst);
    switch (w.pairKind) {
    case PairPbPb: m.pairKind = PairPbPb; break;
    case PairIG: m.pairKind = PairGI; break;
    case PairGI: m.pairKind = PairIG; break;
    case PairPbG: m.pairKind = PairGPb; break;
    case PairGPb: m.pairKind = PairPbG; break;
    case PairGG: m.pairKind = PairGG; break;
    }
    return m;
  };
  for (const MirrorWire& w : all)
    if (!have.count(mirrored(w)))
      throw ProtocolError("asymmetric communication maps: entity " + std::to_string(w.gid) +
                          " codim " + std::to_string(w.codim) + " pair " +
                          std::to_string(w.pairKind) + " " + std::to_string(w.src) + "->" +
                          std::to_string(w.dst));
}

} // namespace

// ---------------------------------------------------------------- factory

CurvGridFactory::CurvGridFactory(Communicator& comm, bool withGhostElements,
                                 bool withGmshElementIndex, bool xorOwnership)
    : comm_(comm) {
  storage_.withGhosts = withGhostElements;
  storage_.useFileElementIndex = withGmshElementIndex;
  storage_.xorOwnership = xorOwnership;
  storage_.rank = comm.rank();
  storage_.nRanks = comm.size();
}

void CurvGridFactory::insertVertex(const Vec& pos, std::int64_t globalIndex) {
  VertexRec v;
  v.position = pos;
  v.globalIndex = globalIndex;
  storage_.vertices.push_back(v);
  storage_.worldDim = pos.size();
}

void CurvGridFactory::insertElement(SimplexKind kind, const std::vector<int>& localVertexIndices,
                                    int order, int physicalTag, std::int64_t elementIndex) {
  if (static_cast<int>(localVertexIndices.size()) != simplexNodeCount(simplexDim(kind), order))
    throw DimensionError("element vertex count does not match its order");
  for (int v : localVertexIndices)
    if (v < 0 || v >= static_cast<int>(storage_.vertices.size()))
      throw DimensionError("element references a vertex that was not inserted");
  insertedElements_.push_back({kind, localVertexIndices, order, physicalTag, elementIndex, false});
}

void CurvGridFactory::insertBoundarySegment(SimplexKind kind,
                                            const std::vector<int>& localVertexIndices, int order,
                                            int physicalTag, bool isDomainBoundary) {
  if (static_cast<int>(localVertexIndices.size()) != simplexNodeCount(simplexDim(kind), order))
    throw DimensionError("boundary segment vertex count does not match its order");
  for (int v : localVertexIndices)
    if (v < 0 || v >= static_cast<int>(storage_.vertices.size()))
      throw DimensionError("boundary segment references a vertex that was not inserted");
  insertedBoundary_.push_back({kind, localVertexIndices, order, physicalTag, 0, isDomainBoundary});
}

void CurvGridFactory::createGrid() {
  if (grid_) throw Error("createGrid called twice");
  // the element dimension is fixed by the inserted elements; empty ranks
  // follow the world dimension of their vertices (3 by default)
  if (!insertedElements_.empty())
    storage_.meshDim = simplexDim(insertedElements_[0].kind);
  else
    storage_.meshDim = storage_.worldDim;

  // all ranks must agree on the mesh dimension, including empty ones
  std::vector<std::int32_t> mine = {static_cast<std::int32_t>(insertedElements_.empty() ? 0 : storage_.meshDim)};
  std::vector<int> lens;
  const auto dims = allGather(comm_, mine, lens, 9);
  int meshDim = 0;
  for (std::int32_t d : dims) meshDim = std::max(meshDim, static_cast<int>(d));
  if (meshDim == 0) throw Error("cannot build a grid without elements on any rank");
  storage_.meshDim = meshDim;

  ConstructorInput input;
  for (auto& e : insertedElements_)
    input.elements.push_back({e.kind, std::move(e.vertexIds), e.order, e.physicalTag, e.elementIndex, false});
  for (auto& b : insertedBoundary_)
    input.boundary.push_back({b.kind, std::move(b.vertexIds), b.order, b.physicalTag, 0, b.isDomainBoundary});
  insertedElements_.clear();
  insertedBoundary_.clear();

  TimingLog log;
  CommMaps maps;
  GridBuild build(storage_, comm_, log, maps);
  build.generateEntities(input);
  build.buildGlobalIndices();
  build.buildGhosts();
  build.buildIndexSubsets();
  build.buildCommMaps();

  grid_ = std::make_shared<CurvGrid>(std::move(storage_), std::move(maps), comm_, std::move(log));
}

std::shared_ptr<CurvGrid> CurvGridFactory::releaseGrid() {
  if (!grid_) createGrid();
  return std::move(grid_);
}

} // namespace curv
