#ifndef CURV_VTKWRITER_HPP
#define CURV_VTKWRITER_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curv/geometry.hpp"
#include "curv/grid.hpp"

namespace curv {

struct WriterOptions {
  /// Manual virtual-refinement resolution: discretization vertices per
  /// edge (>= 2). Ignored when interpolate is set.
  int nDiscretizationPoint = 2;
  /// Reuse the entity's own interpolation grid for the virtual refinement.
  bool interpolate = true;
  /// Shrink entities toward their mass centers; 0 disables, at most 0.99.
  double explode = 0.0;
  /// Scale boundary entities radially about the origin; 0 disables, any
  /// positive factor is accepted (1 keeps positions).
  double magnify = 0.0;
  /// Entity codimensions to write (elements, faces, edges, vertices).
  std::array<bool, 4> writeCodim = {true, false, false, false};
  /// Fixed virtual refinement order; when absent the writer derives it
  /// from the curvilinear order of each entity.
  std::optional<int> fixedVirtualRefinement;
  /// Inline base64 data arrays instead of ascii.
  bool base64 = false;
};

/// Point-data field sampled over the virtual refinement of entities of one
/// codimension. init() runs once per entity before evaluations.
class FieldFunctor {
public:
  virtual ~FieldFunctor() = default;
  virtual std::string name() const = 0;
  virtual int codim() const = 0;      // 0: elements, 1: boundary faces
  virtual int components() const = 0; // 1 or 3
  virtual void init(const CurvGrid& grid, int localIndex) = 0;
  virtual Vec evaluate(const Vec& local) const = 0; // size == components()
};

/// Entity-level accumulator: discretizes curvilinear entities into linear
/// sub-simplices and writes the collection as a VTU piece.
class CurvVtkWriter {
public:
  explicit CurvVtkWriter(int worldDim = 3) : worldDim_(worldDim) {}

  /// Field names must be declared before entities are added.
  void declareField(const std::string& name, int components);

  /// tagSet carries the three diagnostic cell fields: physical tag,
  /// partition type, containing rank. fieldValues holds, per declared
  /// field, the samples at the refinement points of this entity (empty:
  /// zero fill).
  void addEntity(const CurvilinearGeometry& geometry, std::array<int, 3> tagSet,
                 const WriterOptions& options, bool isBoundaryEntity = false,
                 const std::vector<std::vector<double>>& fieldValues = {});

  int pointCount() const { return static_cast<int>(points_.size()); }
  int cellCount() const { return static_cast<int>(cellOffsets_.size()); }

  /// Serial VTU piece.
  void writeVtu(const std::string& path, bool base64 = false) const;

  /// Parallel master referencing one piece per rank.
  static void writePvtu(const std::string& path, const std::string& pieceBaseName, int nRanks,
                        const std::vector<std::pair<std::string, int>>& fields);

  /// The number of virtual refinement subdivisions addEntity will use.
  static int refinementOrder(const CurvilinearGeometry& geometry, const WriterOptions& options);

  /// Linear sub-simplex decomposition of the reference simplex grid of
  /// side n: indices into the Sorted Cartesian node grid, (dim+1) per cell.
  static std::vector<std::array<int, 4>> subSimplices(int dim, int n);

private:
  int worldDim_;
  std::vector<Vec> points_;
  std::vector<int> cellConnectivity_;
  std::vector<int> cellOffsets_;
  std::vector<std::uint8_t> cellTypes_;
  std::vector<std::array<int, 3>> cellTags_;
  std::vector<std::pair<std::string, int>> fieldDecl_; // name, components
  std::vector<std::vector<double>> fieldData_;         // per field, per point * components
};

/// Whole-grid writer: one VTU per rank plus a PVTU master from rank 0.
class CurvVtkGridWriter {
public:
  explicit CurvVtkGridWriter(const CurvGrid& grid) : grid_(&grid) {}

  WriterOptions& options() { return options_; }
  void useFixedVirtualRefinement(int order) { options_.fixedVirtualRefinement = order; }
  void addField(std::shared_ptr<FieldFunctor> field);

  /// Writes dir/baseName_pNNNN.vtu per rank and dir/baseName.pvtu.
  /// Collective over the grid's communicator.
  void write(const std::string& dir, const std::string& baseName) const;

private:
  const CurvGrid* grid_;
  WriterOptions options_;
  std::vector<std::shared_ptr<FieldFunctor>> fields_;
};

} // namespace curv

#endif
