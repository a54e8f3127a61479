#ifndef CURV_REFSIMPLEX_HPP
#define CURV_REFSIMPLEX_HPP

#include <vector>

#include "curv/smallvec.hpp"

namespace curv {

/// Topology tables of the reference simplex of dimension 1..3 with corners
/// numbered 0 = origin, then the unit points along x, y, z.
///
/// Subentity orderings (corner index lists):
///   tetrahedron faces: {0,1,2} {0,1,3} {0,2,3} {1,2,3}
///   tetrahedron edges: {0,1} {0,2} {1,2} {0,3} {1,3} {2,3}
///   triangle edges:    {0,1} {0,2} {1,2}
namespace refsimplex {

int numCorners(int dim);
int numSubentities(int dim, int codim);

/// Corner indices (within the parent's 0..dim corner numbering) of one
/// subentity.
const std::vector<int>& subentityCorners(int dim, int codim, int subIndex);

/// Barycenter of the reference simplex (every coordinate 1/(dim+1)).
Vec center(int dim);

/// Local coordinates of the corners.
Vec cornerCoordinate(int dim, int corner);

/// True if all barycentric bounds hold up to tol.
bool inside(const Vec& r, double tol);

/// Indices of the corner nodes within the Sorted Cartesian grid of the
/// given interpolation order.
std::vector<int> cornerNodeIndices(int dim, int order);

/// Node indices (into the parent's Sorted Cartesian grid) of a subentity's
/// own interpolation grid, listed in the subentity's Sorted Cartesian order.
std::vector<int> subentityNodeIndices(int dim, int order, int codim, int subIndex);

/// Outward unit normal of a codim-1 subentity of the reference simplex.
Vec referenceOutwardNormal(int dim, int subIndex);

} // namespace refsimplex

} // namespace curv

#endif
