#ifndef CURV_GEOMETRY_HPP
#define CURV_GEOMETRY_HPP

#include <memory>
#include <optional>
#include <vector>

#include "curv/lagrange.hpp"
#include "curv/poly.hpp"
#include "curv/quadrature.hpp"
#include "curv/smallvec.hpp"

namespace curv {

/// Result of the restrictive global-to-local search: the local coordinate
/// is present only when the queried global coordinate lies on/inside the
/// entity image.
struct LocalResult {
  std::optional<Vec> local;
  bool found() const { return local.has_value(); }
};

/// A curvilinear simplex entity of local dimension 1..3 embedded in world
/// dimension >= local dimension, defined by its interpolatory vertices in
/// Sorted Cartesian order.
///
/// Immutable after construction. The symbolic map and Jacobian are built
/// lazily on first use (eagerly when `precompute` is set) behind a shared
/// single-initialization latch, so instances are cheap to copy and safe to
/// query concurrently.
class CurvilinearGeometry {
public:
  CurvilinearGeometry() = default;
  CurvilinearGeometry(int mydim, int cdim, int order, std::vector<Vec> vertices,
                      bool precompute = false);

  int mydim() const { return mydim_; }
  int cdim() const { return cdim_; }
  int order() const { return order_; }
  int nVertices() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vec>& vertices() const { return vertices_; }

  /// The mydim+1 corner images.
  std::vector<Vec> corners() const;
  Vec corner(int i) const;
  /// Image of the reference-simplex barycenter.
  Vec center() const;

  /// Local-to-global map p(r) = sum_j L_j(r) x_j.
  Vec global(const Vec& r) const;

  /// Symbolic map and Jacobian.
  const PolynomialVector& map() const;
  const PolynomialMatrix& jacobianPoly() const;

  /// Jacobian J(r), shape mydim x cdim with J(i,j) = d p_j / d r_i.
  Mat jacobian(const Vec& r) const;

  /// Integration element sqrt(det(J J^T)) >= 0.
  double integrationElement(const Vec& r) const;

  /// Gauss-Newton inverse map restricted to the entity: succeeds only when
  /// the global point lies on/inside the image (|p(r)-x| <= tol). Returns
  /// no coordinate for exterior points; terminates early when the iterate
  /// runs far outside the element or convergence stalls. Throws
  /// ConvergenceError when the iteration cap is exhausted.
  LocalResult localRestrictive(const Vec& x, double tol) const;

  /// Best-effort inverse over the whole local domain: returns the
  /// least-squares minimizer of |p(r)-x|^2, also outside the reference
  /// element. Throws ConvergenceError when the search does not settle.
  Vec localNonRestrictive(const Vec& x, double tol) const;

  /// Geometry of a subentity (codim >= 1), built from the matching subset
  /// of interpolatory vertices.
  CurvilinearGeometry subentityGeometry(int codim, int subIndex) const;

  /// Unit outward normal of a codim-1 subentity, evaluated at a coordinate
  /// local to that subentity. Requires mydim == cdim.
  Vec subentityNormal(int subIndex, const Vec& rFace) const;

  /// Tangent-plane cross product for mydim == cdim-1 entities (length/area
  /// weighted, not normalized): the 90-degree tangent rotation (t1,-t0) for
  /// curves in 2D, t_u x t_v for surfaces in 3D.
  Vec surfaceNormal(const Vec& r) const;

  /// Volume (length/area) by adaptive quadrature of the integration element.
  double volume(double relTol) const;

  /// Integrate a local-coordinate functor against the integration element.
  template <class F>
  auto integrate(F&& f, const IntegratorConfig& cfg) const {
    return integrateRecursive(
        mydim_, [&](const Vec& r) { return f(r) * integrationElement(r); }, cfg);
  }

  int gaussNewtonIterationCap() const { return iterationCap_; }

private:
  struct Lazy;
  const Lazy& lazy() const;
  Vec gaussNewtonStep(const Vec& r, const Vec& residual) const;

  int mydim_ = 0, cdim_ = 0, order_ = 0;
  std::vector<Vec> vertices_;
  std::shared_ptr<const LagrangeBasis> basis_;
  std::shared_ptr<Lazy> lazy_;
  int iterationCap_ = 200;
};

} // namespace curv

#endif
