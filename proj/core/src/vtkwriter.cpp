#include "curv/vtkwriter.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>

#include "curv/errors.hpp"
#include "curv/lagrange.hpp"
#include "curv/refsimplex.hpp"

namespace curv {

namespace {

const char* vtkTypeName(int dim) {
  switch (dim) {
  case 0: return "1"; // vertex
  case 1: return "3"; // line
  case 2: return "5"; // triangle
  default: return "10"; // tetrahedron
  }
}

std::string base64Encode(const void* data, std::size_t bytes) {
  static const char alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  const auto* p = static_cast<const unsigned char*>(data);
  std::string out;
  out.reserve((bytes + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes; i += 3) {
    unsigned int v = p[i] << 16;
    if (i + 1 < bytes) v |= p[i + 1] << 8;
    if (i + 2 < bytes) v |= p[i + 2];
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.push_back(i + 1 < bytes ? alphabet[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < bytes ? alphabet[v & 63] : '=');
  }
  return out;
}

void writeDoubleArray(std::ofstream& os, const std::string& name, int components,
                      const std::vector<double>& values, bool base64) {
  os << "        <DataArray type=\"Float64\" Name=\"" << name << "\" NumberOfComponents=\""
     << components << "\" format=\"" << (base64 ? "binary" : "ascii") << "\">\n";
  if (base64) {
    std::vector<unsigned char> blob(4 + values.size() * 8);
    const std::uint32_t len = static_cast<std::uint32_t>(values.size() * 8);
    std::memcpy(blob.data(), &len, 4);
    std::memcpy(blob.data() + 4, values.data(), values.size() * 8);
    os << "          " << base64Encode(blob.data(), blob.size()) << "\n";
  } else {
    char buf[64];
    os << "         ";
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof(buf), " %.17g", values[i]);
      os << buf;
      if ((i + 1) % 6 == 0 && i + 1 < values.size()) os << "\n         ";
    }
    os << "\n";
  }
  os << "        </DataArray>\n";
}

template <class Int>
void writeIntArray(std::ofstream& os, const std::string& name, const std::vector<Int>& values,
                   const char* vtkType) {
  os << "        <DataArray type=\"" << vtkType << "\" Name=\"" << name << "\" format=\"ascii\">\n";
  os << "         ";
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << ' ' << static_cast<long long>(values[i]);
    if ((i + 1) % 12 == 0 && i + 1 < values.size()) os << "\n         ";
  }
  os << "\n        </DataArray>\n";
}

} // namespace

int CurvVtkWriter::refinementOrder(const CurvilinearGeometry& geometry, const WriterOptions& options) {
  if (options.fixedVirtualRefinement) return std::max(1, *options.fixedVirtualRefinement);
  if (options.interpolate) return geometry.order();
  return std::max(1, options.nDiscretizationPoint - 1);
}

std::vector<std::array<int, 4>> CurvVtkWriter::subSimplices(int dim, int n) {
  const auto grid = simplexGridEnumerate(dim, n);
  std::map<std::array<int, 3>, int> index;
  for (std::size_t i = 0; i < grid.size(); ++i) index[grid[i]] = static_cast<int>(i);
  auto at = [&](int x, int y, int z) { return index.at({x, y, z}); };

  std::vector<std::array<int, 4>> cells;
  if (dim == 1) {
    for (int i = 0; i < n; ++i) cells.push_back({at(i, 0, 0), at(i + 1, 0, 0), -1, -1});
    return cells;
  }
  if (dim == 2) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i + j < n; ++i) {
        cells.push_back({at(i, j, 0), at(i + 1, j, 0), at(i, j + 1, 0), -1});
        if (i + j < n - 1)
          cells.push_back({at(i + 1, j, 0), at(i + 1, j + 1, 0), at(i, j + 1, 0), -1});
      }
    return cells;
  }
  // tetrahedron: corner tets, split octahedra, inverted tets
  for (int k = 0; k < n; ++k)
    for (int j = 0; j + k < n; ++j)
      for (int i = 0; i + j + k < n; ++i) {
        cells.push_back({at(i, j, k), at(i + 1, j, k), at(i, j + 1, k), at(i, j, k + 1)});
        if (i + j + k < n - 1) {
          const int a = at(i + 1, j, k), b = at(i, j + 1, k), c = at(i, j, k + 1);
          const int ab = at(i + 1, j + 1, k), ac = at(i + 1, j, k + 1), bc = at(i, j + 1, k + 1);
          cells.push_back({a, b, c, bc});
          cells.push_back({a, b, ab, bc});
          cells.push_back({a, ab, ac, bc});
          cells.push_back({a, ac, c, bc});
        }
        if (i + j + k < n - 2)
          cells.push_back({at(i + 1, j + 1, k), at(i, j + 1, k + 1), at(i + 1, j, k + 1),
                           at(i + 1, j + 1, k + 1)});
      }
  return cells;
}

void CurvVtkWriter::declareField(const std::string& name, int components) {
  for (const auto& [n, c] : fieldDecl_)
    if (n == name) throw Error("duplicate field name '" + name + "'");
  fieldDecl_.emplace_back(name, components);
  fieldData_.emplace_back();
  // zero-fill for points added before this declaration
  fieldData_.back().assign(points_.size() * components, 0.0);
}

void CurvVtkWriter::addEntity(const CurvilinearGeometry& geometry, std::array<int, 3> tagSet,
                              const WriterOptions& options, bool isBoundaryEntity,
                              const std::vector<std::vector<double>>& fieldValues) {
  if (options.explode < 0.0 || options.explode > 0.99)
    throw DimensionError("explode must lie in [0, 0.99]");
  if (options.magnify < 0.0) throw DimensionError("magnify must be non-negative");
  if (!options.interpolate && options.nDiscretizationPoint < 2)
    throw DimensionError("nDiscretizationPoint must be at least 2");

  const int dim = geometry.mydim();
  const int n = refinementOrder(geometry, options);
  const auto localNodes = simplexGridCoordinates(dim, n);
  const int base = pointCount();

  Vec center(worldDim_);
  for (const Vec& v : geometry.vertices()) center.axpy(1.0 / geometry.nVertices(), v);

  for (const Vec& r : localNodes) {
    Vec p = geometry.global(r);
    if (options.explode != 0.0) p = center + (1.0 - options.explode) * (p - center);
    if (isBoundaryEntity && options.magnify > 0.0) p = p * options.magnify;
    points_.push_back(p);
  }

  for (const auto& cell : subSimplices(dim, n)) {
    for (int c = 0; c <= dim; ++c) cellConnectivity_.push_back(base + cell[c]);
    cellOffsets_.push_back(static_cast<int>(cellConnectivity_.size()));
    cellTypes_.push_back(dim == 3 ? 10 : dim == 2 ? 5 : dim == 1 ? 3 : 1);
    cellTags_.push_back(tagSet);
  }

  for (std::size_t f = 0; f < fieldDecl_.size(); ++f) {
    const int comps = fieldDecl_[f].second;
    if (f < fieldValues.size() && !fieldValues[f].empty()) {
      if (fieldValues[f].size() != localNodes.size() * comps)
        throw DimensionError("field sample count does not match the refinement points");
      fieldData_[f].insert(fieldData_[f].end(), fieldValues[f].begin(), fieldValues[f].end());
    } else {
      fieldData_[f].insert(fieldData_[f].end(), localNodes.size() * comps, 0.0);
    }
  }
}

void CurvVtkWriter::writeVtu(const std::string& path, bool base64) const {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write '" + path + "'");
  os << "<?xml version=\"1.0\"?>\n";
  os << "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" byte_order=\"LittleEndian\">\n";
  os << "  <UnstructuredGrid>\n";
  os << "    <Piece NumberOfPoints=\"" << pointCount() << "\" NumberOfCells=\"" << cellCount()
     << "\">\n";

  os << "      <Points>\n";
  std::vector<double> coords;
  coords.reserve(points_.size() * 3);
  for (const Vec& p : points_)
    for (int d = 0; d < 3; ++d) coords.push_back(d < p.size() ? p[d] : 0.0);
  writeDoubleArray(os, "Points", 3, coords, base64);
  os << "      </Points>\n";

  os << "      <Cells>\n";
  writeIntArray(os, "connectivity", cellConnectivity_, "Int64");
  writeIntArray(os, "offsets", cellOffsets_, "Int64");
  writeIntArray(os, "types", cellTypes_, "UInt8");
  os << "      </Cells>\n";

  os << "      <CellData>\n";
  std::vector<int> tag(cellTags_.size()), part(cellTags_.size()), rank(cellTags_.size());
  for (std::size_t i = 0; i < cellTags_.size(); ++i) {
    tag[i] = cellTags_[i][0];
    part[i] = cellTags_[i][1];
    rank[i] = cellTags_[i][2];
  }
  writeIntArray(os, "physicalTag", tag, "Int32");
  writeIntArray(os, "partitionType", part, "Int32");
  writeIntArray(os, "rank", rank, "Int32");
  os << "      </CellData>\n";

  os << "      <PointData>\n";
  for (std::size_t f = 0; f < fieldDecl_.size(); ++f)
    writeDoubleArray(os, fieldDecl_[f].first, fieldDecl_[f].second, fieldData_[f], base64);
  os << "      </PointData>\n";

  os << "    </Piece>\n  </UnstructuredGrid>\n</VTKFile>\n";
}

void CurvVtkWriter::writePvtu(const std::string& path, const std::string& pieceBaseName,
                              int nRanks, const std::vector<std::pair<std::string, int>>& fields) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write '" + path + "'");
  os << "<?xml version=\"1.0\"?>\n";
  os << "<VTKFile type=\"PUnstructuredGrid\" version=\"0.1\" byte_order=\"LittleEndian\">\n";
  os << "  <PUnstructuredGrid GhostLevel=\"0\">\n";
  os << "    <PPoints>\n      <PDataArray type=\"Float64\" NumberOfComponents=\"3\"/>\n"
     << "    </PPoints>\n";
  os << "    <PCellData>\n";
  for (const char* name : {"physicalTag", "partitionType", "rank"})
    os << "      <PDataArray type=\"Int32\" Name=\"" << name << "\"/>\n";
  os << "    </PCellData>\n";
  os << "    <PPointData>\n";
  for (const auto& [name, comps] : fields)
    os << "      <PDataArray type=\"Float64\" Name=\"" << name << "\" NumberOfComponents=\""
       << comps << "\"/>\n";
  os << "    </PPointData>\n";
  char buf[4096];
  for (int r = 0; r < nRanks; ++r) {
    std::snprintf(buf, sizeof(buf), "%s_p%04d.vtu", pieceBaseName.c_str(), r);
    os << "    <Piece Source=\"" << buf << "\"/>\n";
  }
  os << "  </PUnstructuredGrid>\n</VTKFile>\n";
}

void CurvVtkGridWriter::addField(std::shared_ptr<FieldFunctor> field) {
  for (const auto& f : fields_)
    if (f->name() == field->name()) throw Error("duplicate field name '" + field->name() + "'");
  fields_.push_back(std::move(field));
}

void CurvVtkGridWriter::write(const std::string& dir, const std::string& baseName) const {
  const GridStorage& s = grid_->storage();
  CurvVtkWriter writer(s.worldDim);
  for (const auto& f : fields_) writer.declareField(f->name(), f->components());

  auto sampleFields = [&](int codim, int localIndex, const CurvilinearGeometry& geom,
                          bool isBoundary) {
    std::vector<std::vector<double>> values(fields_.size());
    const int n = CurvVtkWriter::refinementOrder(geom, options_);
    const auto nodes = simplexGridCoordinates(geom.mydim(), n);
    for (std::size_t f = 0; f < fields_.size(); ++f) {
      if (fields_[f]->codim() != codim) continue;
      if (codim == 1 && !isBoundary) continue; // face fields live on boundary segments
      fields_[f]->init(*grid_, localIndex);
      auto& out = values[f];
      out.reserve(nodes.size() * fields_[f]->components());
      for (const Vec& r : nodes) {
        const Vec v = fields_[f]->evaluate(r);
        for (int c = 0; c < fields_[f]->components(); ++c) out.push_back(v[c]);
      }
    }
    return values;
  };

  if (options_.writeCodim[0]) {
    for (int e = 0; e < s.entityCount(0); ++e) {
      const auto geom = s.elementGeometry(e);
      const std::array<int, 3> tags = {s.elements[e].physicalTag,
                                       static_cast<int>(s.elements[e].pk), grid_->rank()};
      writer.addEntity(geom, tags, options_, false, sampleFields(0, e, geom, false));
    }
  }
  if (options_.writeCodim[1]) {
    for (int f = 0; f < s.entityCount(1); ++f) {
      if (s.faces[f].pk == PartitionKind::Ghost) continue;
      const bool isBoundary = s.faces[f].boundary == FaceBoundaryKind::Domain ||
                              s.faces[f].interiorBoundarySurface;
      const auto geom = s.entityGeometry(1, f);
      const std::array<int, 3> tags = {s.faces[f].physicalTag, static_cast<int>(s.faces[f].pk),
                                       grid_->rank()};
      writer.addEntity(geom, tags, options_, isBoundary, sampleFields(1, f, geom, isBoundary));
    }
  }
  if (s.meshDim == 3 && options_.writeCodim[2]) {
    for (int g = 0; g < s.entityCount(2); ++g) {
      if (s.edges[g].pk == PartitionKind::Ghost) continue;
      const auto geom = s.entityGeometry(2, g);
      const std::array<int, 3> tags = {-1, static_cast<int>(s.edges[g].pk), grid_->rank()};
      writer.addEntity(geom, tags, options_, false);
    }
  }

  char buf[4096];
  std::snprintf(buf, sizeof(buf), "%s/%s_p%04d.vtu", dir.c_str(), baseName.c_str(), grid_->rank());
  writer.writeVtu(buf, options_.base64);

  grid_->comm().barrier();
  if (grid_->rank() == 0) {
    std::vector<std::pair<std::string, int>> decls;
    for (const auto& f : fields_) decls.emplace_back(f->name(), f->components());
    std::snprintf(buf, sizeof(buf), "%s/%s.pvtu", dir.c_str(), baseName.c_str());
    CurvVtkWriter::writePvtu(buf, baseName, grid_->nRanks(), decls);
  }
}

} // namespace curv
