#ifndef CURV_LAGRANGE_HPP
#define CURV_LAGRANGE_HPP

#include <array>
#include <memory>
#include <vector>

#include "curv/poly.hpp"
#include "curv/smallvec.hpp"

namespace curv {

/// Number of nodes of the uniform interpolatory grid over the reference
/// simplex: order+1, (order+1)(order+2)/2, (order+1)(order+2)(order+3)/6.
int simplexNodeCount(int dim, int order);

/// Integer node tuples of the uniform grid of side n over the reference
/// simplex, in Sorted Cartesian order (x fastest, then y, then z). The
/// local coordinates of the interpolation nodes are these tuples / n.
std::vector<std::array<int, 3>> simplexGridEnumerate(int dim, int n);

/// Local coordinates of the uniform interpolation grid (= enumeration / n).
std::vector<Vec> simplexGridCoordinates(int dim, int n);

/// Complete monomial basis up to total degree `order`. Powers correspond
/// one-to-one to simplexGridEnumerate(dim, order).
std::vector<Monomial> monomialBasis(int dim, int order);

/// Lagrange basis on the uniform simplex grid: polynomials L_j with
/// L_j(r_i) = delta_ij at every grid node, obtained by solving the
/// Vandermonde system over the complete monomial basis.
class LagrangeBasis {
public:
  LagrangeBasis(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<Polynomial>& basis() const { return basis_; }
  const std::vector<Vec>& nodes() const { return nodes_; }

  /// Vandermonde entry V(i,j) = z_i(r_j).
  double vandermonde(int i, int j) const { return vand_[i * size() + j]; }

  /// Evaluate every L_j at once, sharing the monomial evaluations.
  std::vector<double> evaluateAll(const Vec& point) const;

private:
  int dim_, order_;
  std::vector<Vec> nodes_;
  std::vector<Monomial> monomials_;
  std::vector<Polynomial> basis_;
  std::vector<double> vand_;   // V, row-major
  std::vector<double> coeff_;  // W = V^{-1}, row-major: L_j = sum_i W(j,i) z_i
};

/// Process-wide memo of bases keyed by (dim, order); safe under concurrent
/// first access.
std::shared_ptr<const LagrangeBasis> lagrangeBasis(int dim, int order);

/// Interpolate a coordinate map through the grid nodes: given one world
/// coordinate per node (Sorted Cartesian order), build the polynomial map
/// p(r) = sum_j L_j(r) x_j.
PolynomialVector interpolate(const LagrangeBasis& basis, const std::vector<Vec>& values);

} // namespace curv

#endif
