#include "curv/geometry.hpp"

#include <cmath>
#include <mutex>

#include "curv/errors.hpp"
#include "curv/refsimplex.hpp"

namespace curv {

struct CurvilinearGeometry::Lazy {
  std::mutex mtx;
  bool mapBuilt = false;
  bool jacBuilt = false;
  PolynomialVector map;
  PolynomialMatrix jac;
};

CurvilinearGeometry::CurvilinearGeometry(int mydim, int cdim, int order, std::vector<Vec> vertices,
                                         bool precompute)
    : mydim_(mydim), cdim_(cdim), order_(order), vertices_(std::move(vertices)),
      lazy_(std::make_shared<Lazy>()) {
  if (mydim < 1 || mydim > 3 || cdim < mydim || cdim > 3)
    throw DimensionError("geometry dimensions out of range (mydim " + std::to_string(mydim) +
                         ", cdim " + std::to_string(cdim) + ")");
  if (static_cast<int>(vertices_.size()) != simplexNodeCount(mydim, order))
    throw DimensionError("geometry vertex count " + std::to_string(vertices_.size()) +
                         " does not match order " + std::to_string(order));
  for (const Vec& v : vertices_)
    if (v.size() != cdim) throw DimensionError("geometry vertex has wrong world dimension");
  basis_ = lagrangeBasis(mydim, order);
  if (precompute) {
    (void)map();
    (void)jacobianPoly();
    std::lock_guard<std::mutex> lock(lazy_->mtx);
    lazy_->map = lazy_->map.cache();
    lazy_->jac = lazy_->jac.cache();
  }
}

const CurvilinearGeometry::Lazy& CurvilinearGeometry::lazy() const { return *lazy_; }

const PolynomialVector& CurvilinearGeometry::map() const {
  std::lock_guard<std::mutex> lock(lazy_->mtx);
  if (!lazy_->mapBuilt) {
    lazy_->map = interpolate(*basis_, vertices_);
    lazy_->mapBuilt = true;
  }
  return lazy_->map;
}

const PolynomialMatrix& CurvilinearGeometry::jacobianPoly() const {
  (void)map();
  std::lock_guard<std::mutex> lock(lazy_->mtx);
  if (!lazy_->jacBuilt) {
    lazy_->jac = lazy_->map.jacobian();
    lazy_->jacBuilt = true;
  }
  return lazy_->jac;
}

std::vector<Vec> CurvilinearGeometry::corners() const {
  std::vector<Vec> out;
  for (int idx : refsimplex::cornerNodeIndices(mydim_, order_)) out.push_back(vertices_[idx]);
  return out;
}

Vec CurvilinearGeometry::corner(int i) const {
  return vertices_[refsimplex::cornerNodeIndices(mydim_, order_)[i]];
}

Vec CurvilinearGeometry::center() const { return global(refsimplex::center(mydim_)); }

Vec CurvilinearGeometry::global(const Vec& r) const {
  const std::vector<double> l = basis_->evaluateAll(r);
  Vec x(cdim_);
  for (size_t j = 0; j < l.size(); ++j) x.axpy(l[j], vertices_[j]);
  return x;
}

Mat CurvilinearGeometry::jacobian(const Vec& r) const { return jacobianPoly().evaluate(r); }

double CurvilinearGeometry::integrationElement(const Vec& r) const {
  const Mat j = jacobian(r);
  if (mydim_ == cdim_) return std::abs(j.det());
  const double d = j.timesTransposed().det();
  return d > 0.0 ? std::sqrt(d) : 0.0;
}

Vec CurvilinearGeometry::gaussNewtonStep(const Vec& r, const Vec& residual) const {
  const Mat j = jacobian(r);
  const Mat gram = j.timesTransposed();
  const Vec rhs = j.apply(residual);
  Vec d;
  if (!solveSquare(gram, rhs, d))
    throw ConvergenceError("singular Jacobian in global-to-local iteration");
  return d;
}

LocalResult CurvilinearGeometry::localRestrictive(const Vec& x, double tol) const {
  if (x.size() != cdim_) throw DimensionError("localRestrictive point dimension mismatch");

  Vec r = refsimplex::center(mydim_);
  const Vec centerImage = global(r);
  double radius = 0.0;
  for (const Vec& c : corners()) radius = std::max(radius, (c - centerImage).twoNorm());

  const double insideTol = 1e-7;
  double prevErr = -1.0;
  int slowCount = 0;
  for (int it = 0; it < iterationCap_; ++it) {
    const Vec img = global(r);
    const Vec residual = x - img;
    const double err = residual.twoNorm();
    if (err <= tol) {
      if (refsimplex::inside(r, insideTol)) return LocalResult{r};
      return LocalResult{};
    }
    if ((img - centerImage).twoNorm() > 4.0 * radius) return LocalResult{}; // far outside
    if (it > 10 && prevErr > 0.0) {
      slowCount = (err / prevErr > 0.9) ? slowCount + 1 : 0;
      if (slowCount >= 5) return LocalResult{}; // stalled: distance minimum off the entity
    }
    prevErr = err;
    r += gaussNewtonStep(r, residual);
    if (!std::isfinite(r.twoNorm()))
      throw ConvergenceError("global-to-local iteration diverged to non-finite coordinates");
  }
  throw ConvergenceError("restrictive global-to-local search exceeded " +
                         std::to_string(iterationCap_) + " iterations");
}

Vec CurvilinearGeometry::localNonRestrictive(const Vec& x, double tol) const {
  if (x.size() != cdim_) throw DimensionError("localNonRestrictive point dimension mismatch");
  Vec r = refsimplex::center(mydim_);
  for (int it = 0; it < iterationCap_; ++it) {
    const Vec residual = x - global(r);
    if (residual.twoNorm() <= tol) return r;
    const Vec d = gaussNewtonStep(r, residual);
    r += d;
    if (!std::isfinite(r.twoNorm()))
      throw ConvergenceError("non-restrictive global-to-local search diverged");
    if (d.twoNorm() <= 1e-12) return r; // stationary: distance minimizer
  }
  throw ConvergenceError("non-restrictive global-to-local search did not settle in " +
                         std::to_string(iterationCap_) + " iterations");
}

CurvilinearGeometry CurvilinearGeometry::subentityGeometry(int codim, int subIndex) const {
  if (codim == 0) return *this;
  const auto nodeIdx = refsimplex::subentityNodeIndices(mydim_, order_, codim, subIndex);
  std::vector<Vec> sub;
  sub.reserve(nodeIdx.size());
  for (int i : nodeIdx) sub.push_back(vertices_[i]);
  return CurvilinearGeometry(mydim_ - codim, cdim_, order_, std::move(sub));
}

Vec CurvilinearGeometry::subentityNormal(int subIndex, const Vec& rFace) const {
  if (mydim_ != cdim_) throw DimensionError("subentityNormal requires matching entity and world dimension");

  // Parent local coordinate of the face point via the affine corner embedding.
  const auto& faceCorners = refsimplex::subentityCorners(mydim_, 1, subIndex);
  Vec r = refsimplex::cornerCoordinate(mydim_, faceCorners[0]);
  for (int k = 0; k < mydim_ - 1; ++k) {
    Vec edge = refsimplex::cornerCoordinate(mydim_, faceCorners[k + 1]) -
               refsimplex::cornerCoordinate(mydim_, faceCorners[0]);
    r.axpy(rFace[k], edge);
  }

  // Gradient transform of the reference outward normal. With rows of J
  // holding the derivative directions (J_ik = d p_k / d r_i), a level-set
  // normal maps as n = J^{-1} n_ref.
  const Mat j = jacobian(r);
  Vec n;
  if (!solveSquare(j, refsimplex::referenceOutwardNormal(mydim_, subIndex), n))
    throw ConvergenceError("singular Jacobian while computing subentity normal");
  const double len = n.twoNorm();
  if (len == 0.0) throw ConvergenceError("degenerate normal");
  return n * (1.0 / len);
}

Vec CurvilinearGeometry::surfaceNormal(const Vec& r) const {
  if (mydim_ != cdim_ - 1)
    throw DimensionError("surfaceNormal requires codimension-1 embedding");
  const Mat j = jacobian(r);
  if (mydim_ == 1) {
    Vec n(2);
    n[0] = j(0, 1);
    n[1] = -j(0, 0);
    return n;
  }
  return crossRows(j);
}

double CurvilinearGeometry::volume(double relTol) const {
  IntegratorConfig cfg;
  cfg.relTolerance = relTol;
  return integrate([](const Vec&) { return 1.0; }, cfg).value;
}

} // namespace curv
