#include "curv/gmshreader.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "curv/errors.hpp"
#include "curv/lagrange.hpp"
#include "curv/refsimplex.hpp"
#include "curv/timing.hpp"

#include <memory>
#include <optional>

namespace curv {

namespace {

// ---------------------------------------------------------------- tables

// Sorted Cartesian position -> GMSH node position, per kind and order.
const std::vector<int>& trianglePermutation(int order) {
  static const std::vector<int> t[5] = {
      {0, 1, 2},
      {0, 3, 1, 5, 4, 2},
      {0, 3, 4, 1, 8, 9, 5, 7, 6, 2},
      {0, 3, 4, 5, 1, 11, 12, 13, 6, 10, 14, 7, 9, 8, 2},
      {0, 3, 4, 5, 6, 1, 14, 15, 18, 16, 7, 13, 20, 19, 8, 12, 17, 9, 11, 10, 2},
  };
  return t[order - 1];
}

const std::vector<int>& tetrahedronPermutation(int order) {
  static const std::vector<int> t[5] = {
      {0, 3, 1, 2},
      {0, 7, 3, 4, 9, 1, 6, 8, 5, 2},
      {0, 11, 10, 3, 4, 17, 14, 5, 15, 1, 9, 18, 12, 16, 19, 6, 8, 13, 7, 2},
      {0, 15, 14, 13, 3, 4, 25, 27, 19, 5, 26, 20, 6, 21, 1, 12, 28, 29, 16, 22, 34, 31,
       24, 32, 7, 11, 30, 17, 23, 33, 8, 10, 18, 9, 2},
      {0,  19, 18, 17, 16, 3,  4,  34, 39, 36, 24, 5,  37, 38, 25, 6,  35, 26, 7,
       27, 1,  15, 40, 43, 41, 20, 28, 52, 55, 46, 33, 53, 49, 30, 47, 8,  14, 45,
       44, 21, 31, 54, 51, 32, 50, 9,  13, 42, 22, 29, 48, 10, 12, 23, 11, 2},
  };
  return t[order - 1];
}

// GMSH lines store the two end points first, interior nodes in between.
const std::vector<int>& edgePermutation(int order) {
  static std::vector<int> t[5];
  static const bool init = [] {
    for (int o = 1; o <= 5; ++o) {
      std::vector<int> p(o + 1);
      p[0] = 0;
      p[o] = 1;
      for (int i = 1; i < o; ++i) p[i] = i + 1;
      t[o - 1] = std::move(p);
    }
    return true;
  }();
  (void)init;
  return t[order - 1];
}

struct TypeInfo {
  SimplexKind kind;
  int order;
  int code;
};

const TypeInfo kTypes[] = {
    {SimplexKind::Edge, 1, 1},         {SimplexKind::Edge, 2, 8},
    {SimplexKind::Edge, 3, 26},        {SimplexKind::Edge, 4, 27},
    {SimplexKind::Edge, 5, 28},        {SimplexKind::Triangle, 1, 2},
    {SimplexKind::Triangle, 2, 9},     {SimplexKind::Triangle, 3, 21},
    {SimplexKind::Triangle, 4, 23},    {SimplexKind::Triangle, 5, 25},
    {SimplexKind::Tetrahedron, 1, 4},  {SimplexKind::Tetrahedron, 2, 11},
    {SimplexKind::Tetrahedron, 3, 29}, {SimplexKind::Tetrahedron, 4, 30},
    {SimplexKind::Tetrahedron, 5, 31},
};

} // namespace

const std::vector<int>& gmshPermutation(SimplexKind kind, int order) {
  if (order < 1 || order > 5)
    throw DimensionError("renumbering tables cover orders 1..5, got " + std::to_string(order));
  switch (kind) {
  case SimplexKind::Edge: return edgePermutation(order);
  case SimplexKind::Triangle: return trianglePermutation(order);
  case SimplexKind::Tetrahedron: return tetrahedronPermutation(order);
  }
  throw DimensionError("invalid simplex kind");
}

int gmshToSortedCartesian(SimplexKind kind, int order, int gmshLocalIndex) {
  const auto& perm = gmshPermutation(kind, order);
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] == gmshLocalIndex) return static_cast<int>(i);
  throw DimensionError("GMSH node index " + std::to_string(gmshLocalIndex) + " out of range");
}

int gmshTypeCode(SimplexKind kind, int order) {
  for (const TypeInfo& t : kTypes)
    if (t.kind == kind && t.order == order) return t.code;
  return -1;
}

bool simplexFromGmshType(int typeCode, SimplexKind& kind, int& order) {
  for (const TypeInfo& t : kTypes)
    if (t.code == typeCode) {
      kind = t.kind;
      order = t.order;
      return true;
    }
  return false;
}

namespace {

// ---------------------------------------------------------------- scanning

/// The file content with pass-oriented access: re-scans run over an
/// in-memory copy for small files and re-open the file otherwise.
class MeshSource {
public:
  MeshSource(const std::string& path, std::size_t inMemoryLimit) : path_(path) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) throw IoError("cannot stat mesh file '" + path + "'");
    if (size <= inMemoryLimit) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw IoError("cannot open mesh file '" + path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      content_ = buf.str();
      inMemory_ = true;
    }
  }

  std::unique_ptr<std::istream> open() const {
    if (inMemory_) return std::make_unique<std::istringstream>(content_);
    auto f = std::make_unique<std::ifstream>(path_);
    if (!*f) throw IoError("cannot open mesh file '" + path_ + "'");
    return f;
  }

  const std::string& path() const { return path_; }

private:
  std::string path_;
  std::string content_;
  bool inMemory_ = false;
};

struct Scanner {
  explicit Scanner(const MeshSource& src) : in(src.open()), path(src.path()) {}

  bool next(std::string& line) {
    while (std::getline(*in, line)) {
      ++lineNo;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  std::string expect() {
    std::string line;
    if (!next(line)) throw ParseError(path, lineNo, "unexpected end of file");
    return line;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(path, lineNo, msg); }

  std::unique_ptr<std::istream> in;
  std::string path;
  long lineNo = 0;
};

long parseCount(Scanner& s) {
  const std::string line = s.expect();
  std::istringstream is(line);
  long n = -1;
  is >> n;
  if (n < 0) s.fail("expected a non-negative count, got '" + line + "'");
  return n;
}

void expectHeader(Scanner& s, const std::string& header) {
  const std::string line = s.expect();
  if (line != header) s.fail("expected '" + header + "', got '" + line + "'");
}

void checkFormat(Scanner& s) {
  expectHeader(s, "$MeshFormat");
  const std::string line = s.expect();
  std::istringstream is(line);
  std::string version;
  int fileType = -1, dataSize = 0;
  is >> version >> fileType >> dataSize;
  if (version.rfind("2", 0) != 0) s.fail("unsupported mesh format version '" + version + "'");
  if (fileType != 0) s.fail("binary mesh files are not supported");
  (void)dataSize;
  expectHeader(s, "$EndMeshFormat");
}

/// Moves the scanner just past "$Nodes <count>" without reading node data.
long skipToNodes(Scanner& s) {
  checkFormat(s);
  std::string line = s.expect();
  // tolerate optional sections (e.g. $PhysicalNames) before $Nodes
  while (line != "$Nodes") {
    if (line[0] != '$') s.fail("expected a section header, got '" + line + "'");
    const std::string end = "$End" + line.substr(1);
    while (true) {
      line = s.expect();
      if (line == end) break;
    }
    line = s.expect();
  }
  return parseCount(s);
}

/// Positions the scanner just past "$Elements <count>"; returns the count.
long skipToElements(Scanner& s, long* nodeCountOut = nullptr) {
  const long nNodes = skipToNodes(s);
  if (nodeCountOut) *nodeCountOut = nNodes;
  for (long i = 0; i < nNodes; ++i) s.expect(); // VERTEX PASS: skip all vertices
  expectHeader(s, "$EndNodes");
  expectHeader(s, "$Elements");
  return parseCount(s);
}

struct ElementRecord {
  std::int64_t index = -1;
  int type = 0;
  int physicalTag = 0;
  std::vector<std::int64_t> nodes;
  SimplexKind kind{};
  int order = 0;
};

ElementRecord parseElementLine(Scanner& s, const std::string& line, bool nodesToo) {
  std::istringstream is(line);
  ElementRecord rec;
  int nTags = -1;
  is >> rec.index >> rec.type >> nTags;
  if (!is || nTags < 0) s.fail("malformed element record '" + line + "'");
  for (int t = 0; t < nTags; ++t) {
    int tag = 0;
    if (!(is >> tag)) s.fail("element record is missing tags");
    if (t == 0) rec.physicalTag = tag;
  }
  if (!simplexFromGmshType(rec.type, rec.kind, rec.order))
    s.fail("unknown element type " + std::to_string(rec.type));
  const int nNodes = simplexNodeCount(simplexDim(rec.kind), rec.order);
  if (nodesToo) {
    rec.nodes.resize(nNodes);
    for (int i = 0; i < nNodes; ++i)
      if (!(is >> rec.nodes[i])) s.fail("element record has fewer nodes than its type requires");
    std::int64_t extra;
    if (is >> extra) s.fail("element record has more nodes than its type requires");
  }
  return rec;
}

// fixed-size wire record for the corner-block exchange
struct CornerWire {
  std::int64_t position; // 0-based position among volume-element records
  std::int64_t gmshIndex;
  std::int64_t corners[4];
  std::int32_t physicalTag;
  std::int32_t nCorners;
};
static_assert(sizeof(CornerWire) == 56 && std::is_trivially_copyable_v<CornerWire>);

struct OwnedEntity {
  std::int64_t gmshIndex;
  SimplexKind kind;
  int order;
  int physicalTag;
  std::vector<std::int64_t> sortedVertexIds; // Sorted Cartesian order
};

std::vector<std::int64_t> faceKeyOf(const ElementRecord& rec, int meshDim) {
  std::vector<std::int64_t> key(rec.nodes.begin(), rec.nodes.begin() + meshDim);
  std::sort(key.begin(), key.end());
  return key;
}

void dumpDebugVtk(const std::string& path, int rank, const std::vector<OwnedEntity>& elements,
                  const std::map<std::int64_t, Vec>& coords, int meshDim) {
  char name[4096];
  std::snprintf(name, sizeof(name), "%s_r%04d.vtk", path.c_str(), rank);
  std::ofstream out(name);
  if (!out) throw IoError(std::string("cannot write debug file '") + name + "'");
  out << "# vtk DataFile Version 3.0\nrank mesh dump\nASCII\nDATASET UNSTRUCTURED_GRID\n";

  std::vector<std::int64_t> ids;
  std::map<std::int64_t, int> local;
  for (const auto& e : elements)
    for (std::int64_t id : e.sortedVertexIds)
      if (local.emplace(id, 0).second) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  for (size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<int>(i);

  out << "POINTS " << ids.size() << " double\n";
  for (std::int64_t id : ids) {
    const Vec& p = coords.at(id);
    for (int d = 0; d < 3; ++d) out << (d < p.size() ? p[d] : 0.0) << (d == 2 ? '\n' : ' ');
  }
  const int nc = meshDim + 1;
  out << "CELLS " << elements.size() << ' ' << elements.size() * (nc + 1) << '\n';
  for (const auto& e : elements) {
    out << nc;
    const auto cornerIdx = refsimplex::cornerNodeIndices(meshDim, e.order);
    for (int c : cornerIdx) out << ' ' << local.at(e.sortedVertexIds[c]);
    out << '\n';
  }
  out << "CELL_TYPES " << elements.size() << '\n';
  for (size_t i = 0; i < elements.size(); ++i) out << (meshDim == 3 ? 10 : 5) << '\n';
}

} // namespace

ReadSummary readMesh(const std::string& path, Communicator& comm, const Partitioner& partitioner,
                     GridFactorySink& sink, const ReadOptions& options) {
  const MeshSource source(path, options.inMemoryLimit);
  const int rank = comm.rank();
  const int nRanks = comm.size();
  ReadSummary summary;

  auto timed = [&](const char* name) {
    return options.timing ? std::make_unique<ScopedTimer>(*options.timing, name) : nullptr;
  };

  // ELEMENT PASS 1: find the mesh dimension and count elements and
  // boundary segments.
  std::int64_t nRecords = 0;
  int meshDim = 0;
  {
    auto t = timed(stage::readCount);
    Scanner s(source);
    nRecords = skipToElements(s);
    for (std::int64_t i = 0; i < nRecords; ++i) {
      const ElementRecord rec = parseElementLine(s, s.expect(), false);
      meshDim = std::max(meshDim, simplexDim(rec.kind));
    }
  }
  if (meshDim < 2) throw ParseError(path, 0, "mesh contains no triangles or tetrahedra");
  {
    Scanner s(source);
    skipToElements(s);
    for (std::int64_t i = 0; i < nRecords; ++i) {
      const ElementRecord rec = parseElementLine(s, s.expect(), false);
      if (simplexDim(rec.kind) == meshDim) ++summary.totalElements;
      else if (simplexDim(rec.kind) == meshDim - 1) ++summary.totalBoundarySegments;
    }
  }
  summary.meshDim = meshDim;

  // ELEMENT PASS 2: read corners for the contiguous block of this rank.
  const std::int64_t nElem = summary.totalElements;
  const std::int64_t blockLo = rank * nElem / nRanks;
  const std::int64_t blockHi = (rank + 1) * nElem / nRanks;
  std::vector<CornerWire> myBlock;
  {
    auto t = timed(stage::readCorners);
    Scanner s(source);
    skipToElements(s);
    std::int64_t pos = 0;
    for (std::int64_t i = 0; i < nRecords; ++i) {
      const std::string line = s.expect();
      ElementRecord head = parseElementLine(s, line, false);
      if (simplexDim(head.kind) != meshDim) continue;
      if (pos >= blockLo && pos < blockHi) {
        const ElementRecord rec = parseElementLine(s, line, true);
        CornerWire w{};
        w.position = pos;
        w.gmshIndex = rec.index;
        w.physicalTag = rec.physicalTag;
        w.nCorners = meshDim + 1;
        for (int c = 0; c <= meshDim; ++c) w.corners[c] = rec.nodes[c];
        myBlock.push_back(w);
      }
      ++pos;
    }
  }

  // Exchange the corner blocks so the partitioner can run redundantly on
  // identical input everywhere.
  auto partitionTimer = timed(stage::readPartition);
  std::vector<int> gatherLens;
  std::vector<CornerWire> allCorners = allGather(comm, myBlock, gatherLens, 1);
  std::sort(allCorners.begin(), allCorners.end(),
            [](const CornerWire& a, const CornerWire& b) { return a.position < b.position; });
  allCorners.erase(std::unique(allCorners.begin(), allCorners.end(),
                               [](const CornerWire& a, const CornerWire& b) {
                                 return a.position == b.position;
                               }),
                   allCorners.end());
  if (static_cast<std::int64_t>(allCorners.size()) != nElem)
    throw ProtocolError("corner exchange lost elements");

  // Corner coordinates for the mass centers.
  std::map<std::int64_t, Vec> cornerCoords;
  for (const CornerWire& w : allCorners)
    for (int c = 0; c < w.nCorners; ++c) cornerCoords[w.corners[c]] = Vec();
  {
    Scanner s(source);
    const long nNodes = skipToNodes(s);
    for (long i = 0; i < nNodes; ++i) {
      const std::string line = s.expect();
      std::istringstream is(line);
      std::int64_t id;
      double x = 0, y = 0, z = 0;
      if (!(is >> id >> x >> y >> z)) s.fail("malformed node record '" + line + "'");
      const auto it = cornerCoords.find(id);
      if (it != cornerCoords.end()) it->second = meshDim == 3 ? Vec{x, y, z} : Vec{x, y, z};
    }
  }

  std::vector<ElementGraph::Node> graphNodes;
  graphNodes.reserve(allCorners.size());
  for (const CornerWire& w : allCorners) {
    ElementGraph::Node n;
    n.globalIndex = w.gmshIndex;
    Vec center(3);
    for (int c = 0; c < w.nCorners; ++c) {
      n.cornerIds.push_back(w.corners[c]);
      const Vec& p = cornerCoords.at(w.corners[c]);
      if (p.size() == 0) throw ParseError(path, 0, "element corner references unknown vertex id " +
                                                       std::to_string(w.corners[c]));
      center.axpy(1.0 / w.nCorners, p);
    }
    n.center = center;
    graphNodes.push_back(std::move(n));
  }
  std::vector<int> parts;
  if (options.partition) {
    parts = partitioner.partition(ElementGraph::build(std::move(graphNodes)), nRanks);
  } else {
    // keep the contiguous block split of the corner pass
    parts.resize(nElem);
    for (int r = 0; r < nRanks; ++r)
      for (std::int64_t p = r * nElem / nRanks; p < (r + 1) * nElem / nRanks; ++p) parts[p] = r;
  }

  partitionTimer.reset();

  // ELEMENT PASS 3: full data of the elements owned after partitioning;
  // face map keyed by sorted corner ids.
  auto elementTimer = timed(stage::readElements);
  std::vector<OwnedEntity> elements;
  std::map<std::vector<std::int64_t>, int> faceParents; // key -> local parent count
  {
    Scanner s(source);
    skipToElements(s);
    std::int64_t pos = 0;
    for (std::int64_t i = 0; i < nRecords; ++i) {
      const std::string line = s.expect();
      ElementRecord head = parseElementLine(s, line, false);
      if (simplexDim(head.kind) != meshDim) continue;
      if (parts[pos] == rank) {
        const ElementRecord rec = parseElementLine(s, line, true);
        OwnedEntity e;
        e.gmshIndex = rec.index;
        e.kind = rec.kind;
        e.order = rec.order;
        e.physicalTag = rec.physicalTag;
        const auto& perm = gmshPermutation(rec.kind, rec.order);
        e.sortedVertexIds.resize(rec.nodes.size());
        for (size_t k = 0; k < perm.size(); ++k) e.sortedVertexIds[k] = rec.nodes[perm[k]];

        // register the element's faces by sorted corner key
        const auto cornerIdx = refsimplex::cornerNodeIndices(meshDim, e.order);
        for (int f = 0; f < refsimplex::numSubentities(meshDim, 1); ++f) {
          std::vector<std::int64_t> key;
          for (int c : refsimplex::subentityCorners(meshDim, 1, f))
            key.push_back(e.sortedVertexIds[cornerIdx[c]]);
          std::sort(key.begin(), key.end());
          faceParents[key] += 1;
        }
        elements.push_back(std::move(e));
      }
      ++pos;
    }
  }

  elementTimer.reset();

  // ELEMENT PASS 4: boundary segments. Every rank scans all records; the
  // per-face parent counts are summed across ranks to classify tags.
  auto boundaryTimer = timed(stage::readBoundary);
  std::vector<OwnedEntity> boundary;
  std::vector<std::int32_t> localParentCount; // aligned with record order
  std::vector<int> bsegTags;
  {
    Scanner s(source);
    skipToElements(s);
    for (std::int64_t i = 0; i < nRecords; ++i) {
      const std::string line = s.expect();
      ElementRecord head = parseElementLine(s, line, false);
      if (simplexDim(head.kind) != meshDim - 1) continue;
      const ElementRecord rec = parseElementLine(s, line, true);
      std::vector<std::int64_t> key = faceKeyOf(rec, meshDim);
      const auto it = faceParents.find(key);
      const int parents = it == faceParents.end() ? 0 : it->second;
      localParentCount.push_back(parents);
      bsegTags.push_back(rec.physicalTag);
      if (parents > 0) {
        OwnedEntity b;
        b.gmshIndex = rec.index;
        b.kind = rec.kind;
        b.order = rec.order;
        b.physicalTag = rec.physicalTag;
        const auto& perm = gmshPermutation(rec.kind, rec.order);
        b.sortedVertexIds.resize(rec.nodes.size());
        for (size_t k = 0; k < perm.size(); ++k) b.sortedVertexIds[k] = rec.nodes[perm[k]];
        boundary.push_back(std::move(b));
      }
    }
  }

  // classify: a tag is a domain boundary iff all of its faces have exactly
  // one parent element across all ranks
  std::vector<int> countLens;
  const std::vector<std::int32_t> allCounts = allGather(comm, localParentCount, countLens, 2);
  std::vector<std::int32_t> globalCount(localParentCount.size(), 0);
  for (int r = 0; r < nRanks; ++r)
    for (size_t i = 0; i < globalCount.size(); ++i)
      globalCount[i] += allCounts[r * globalCount.size() + i];
  std::map<int, std::pair<int, int>> tagParentRange; // tag -> (min, max) parents
  for (size_t i = 0; i < globalCount.size(); ++i) {
    if (globalCount[i] == 0)
      throw ParseError(path, 0, "boundary segment without any parent element (file inconsistent)");
    auto [it, fresh] = tagParentRange.try_emplace(bsegTags[i], globalCount[i], globalCount[i]);
    if (!fresh) {
      it->second.first = std::min<int>(it->second.first, globalCount[i]);
      it->second.second = std::max<int>(it->second.second, globalCount[i]);
    }
  }
  std::set<int> domainTags;
  for (const auto& [tag, range] : tagParentRange) {
    if (range.second == 1) {
      domainTags.insert(tag);
      summary.domainBoundaryTags.push_back(tag);
    } else {
      summary.interiorBoundaryTags.push_back(tag);
    }
  }

  // volume tags across all ranks
  {
    std::vector<std::int32_t> myTags;
    for (const auto& e : elements) myTags.push_back(e.physicalTag);
    std::sort(myTags.begin(), myTags.end());
    myTags.erase(std::unique(myTags.begin(), myTags.end()), myTags.end());
    std::vector<int> lens;
    const auto all = allGather(comm, myTags, lens, 3);
    std::set<int> tags(all.begin(), all.end());
    summary.volumeTags.assign(tags.begin(), tags.end());
  }

  boundaryTimer.reset();

  // VERTEX PASS 2: coordinates of every vertex used by local entities,
  // inserted in file order so local indices are deterministic.
  auto vertexTimer = timed(stage::readVertices);
  std::set<std::int64_t> needed;
  for (const auto& e : elements)
    needed.insert(e.sortedVertexIds.begin(), e.sortedVertexIds.end());
  for (const auto& b : boundary)
    needed.insert(b.sortedVertexIds.begin(), b.sortedVertexIds.end());
  std::map<std::int64_t, int> localIndex;
  std::map<std::int64_t, Vec> localCoords;
  {
    Scanner s(source);
    const long nNodes = skipToNodes(s);
    int next = 0;
    for (long i = 0; i < nNodes; ++i) {
      const std::string line = s.expect();
      std::istringstream is(line);
      std::int64_t id;
      double x = 0, y = 0, z = 0;
      if (!(is >> id >> x >> y >> z)) s.fail("malformed node record '" + line + "'");
      if (!needed.count(id)) continue;
      const Vec pos = Vec{x, y, z};
      sink.insertVertex(pos, id);
      localCoords[id] = pos;
      localIndex[id] = next++;
    }
  }
  for (std::int64_t id : needed)
    if (!localIndex.count(id))
      throw ParseError(path, 0, "dangling vertex id " + std::to_string(id));
  summary.verticesInserted = static_cast<int>(localIndex.size());

  vertexTimer.reset();

  auto insertTimer = timed(stage::readInsert);
  for (const auto& e : elements) {
    std::vector<int> idx;
    idx.reserve(e.sortedVertexIds.size());
    for (std::int64_t id : e.sortedVertexIds) idx.push_back(localIndex.at(id));
    sink.insertElement(e.kind, idx, e.order, e.physicalTag, e.gmshIndex);
  }
  summary.elementsInserted = static_cast<int>(elements.size());
  for (const auto& b : boundary) {
    std::vector<int> idx;
    idx.reserve(b.sortedVertexIds.size());
    for (std::int64_t id : b.sortedVertexIds) idx.push_back(localIndex.at(id));
    sink.insertBoundarySegment(b.kind, idx, b.order, b.physicalTag, domainTags.count(b.physicalTag) > 0);
  }
  summary.boundarySegmentsInserted = static_cast<int>(boundary.size());
  insertTimer.reset();

  if (!options.vtkDebugPath.empty())
    dumpDebugVtk(options.vtkDebugPath, rank, elements, localCoords, meshDim);

  return summary;
}

} // namespace curv
