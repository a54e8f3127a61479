#include "curv/lagrange.hpp"

#include <map>
#include <mutex>

#include <Eigen/Dense>

#include "curv/errors.hpp"

namespace curv {

namespace {

void checkGridArgs(int dim, int n) {
  if (dim < 1 || dim > 3) throw DimensionError("grid dimension must be 1..3, got " + std::to_string(dim));
  if (n < 1) throw DimensionError("grid order must be >= 1, got " + std::to_string(n));
}

} // namespace

int simplexNodeCount(int dim, int order) {
  switch (dim) {
  case 1: return order + 1;
  case 2: return (order + 1) * (order + 2) / 2;
  case 3: return (order + 1) * (order + 2) * (order + 3) / 6;
  default: throw DimensionError("simplexNodeCount: dimension must be 1..3");
  }
}

std::vector<std::array<int, 3>> simplexGridEnumerate(int dim, int n) {
  checkGridArgs(dim, n);
  std::vector<std::array<int, 3>> nodes;
  nodes.reserve(simplexNodeCount(dim, n));
  const int zmax = dim >= 3 ? n : 0;
  for (int z = 0; z <= zmax; ++z) {
    const int ymax = dim >= 2 ? n - z : 0;
    for (int y = 0; y <= ymax; ++y)
      for (int x = 0; x <= n - z - y; ++x) nodes.push_back({x, y, z});
  }
  return nodes;
}

std::vector<Vec> simplexGridCoordinates(int dim, int n) {
  const auto grid = simplexGridEnumerate(dim, n);
  std::vector<Vec> coords;
  coords.reserve(grid.size());
  for (const auto& g : grid) {
    Vec r(dim);
    for (int j = 0; j < dim; ++j) r[j] = static_cast<double>(g[j]) / n;
    coords.push_back(r);
  }
  return coords;
}

std::vector<Monomial> monomialBasis(int dim, int order) {
  if (order == 0) return {Monomial(1.0, std::vector<int>(dim, 0))};
  const auto grid = simplexGridEnumerate(dim, order);
  std::vector<Monomial> basis;
  basis.reserve(grid.size());
  for (const auto& g : grid) {
    std::vector<int> pow(g.begin(), g.begin() + dim);
    basis.emplace_back(1.0, std::move(pow));
  }
  return basis;
}

LagrangeBasis::LagrangeBasis(int dim, int order) : dim_(dim), order_(order) {
  checkGridArgs(dim, order);
  if (order > 20) throw DimensionError("interpolation order capped at 20");
  nodes_ = simplexGridCoordinates(dim, order);
  monomials_ = monomialBasis(dim, order);
  const int n = static_cast<int>(nodes_.size());

  vand_.assign(static_cast<size_t>(n) * n, 0.0);
  Eigen::MatrixXd v(n, n);
  for (int i = 0; i < n; ++i) {
    const Polynomial zi(dim, monomials_[i]);
    for (int j = 0; j < n; ++j) {
      const double e = zi.evaluate(nodes_[j]);
      vand_[static_cast<size_t>(i) * n + j] = e;
      v(i, j) = e;
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(v);
  // The uniform simplex grid always yields an invertible V; a failure here
  // indicates a broken node/monomial enumeration.
  Eigen::MatrixXd w = lu.solve(Eigen::MatrixXd::Identity(n, n));
  if (!w.allFinite()) throw Error("singular Vandermonde matrix in Lagrange basis construction");

  coeff_.assign(static_cast<size_t>(n) * n, 0.0);
  basis_.reserve(n);
  for (int j = 0; j < n; ++j) {
    Polynomial lj(dim);
    for (int i = 0; i < n; ++i) {
      coeff_[static_cast<size_t>(j) * n + i] = w(j, i);
      if (w(j, i) != 0.0) lj += Monomial(w(j, i), monomials_[i].powers);
    }
    basis_.push_back(std::move(lj));
  }
}

std::vector<double> LagrangeBasis::evaluateAll(const Vec& point) const {
  if (point.size() != dim_) throw DimensionError("evaluateAll point dimension mismatch");
  const int n = size();
  // Evaluate the shared monomials once, then combine.
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) {
    double t = 1.0;
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < monomials_[i].powers[j]; ++k) t *= point[j];
    z[i] = t;
  }
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    const double* row = &coeff_[static_cast<size_t>(j) * n];
    for (int i = 0; i < n; ++i) s += row[i] * z[i];
    out[j] = s;
  }
  return out;
}

std::shared_ptr<const LagrangeBasis> lagrangeBasis(int dim, int order) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::shared_ptr<const LagrangeBasis>> memo;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = memo[{dim, order}];
  if (!slot) slot = std::make_shared<LagrangeBasis>(dim, order);
  return slot;
}

PolynomialVector interpolate(const LagrangeBasis& basis, const std::vector<Vec>& values) {
  if (static_cast<int>(values.size()) != basis.size())
    throw DimensionError("interpolate: value count " + std::to_string(values.size()) +
                         " does not match node count " + std::to_string(basis.size()));
  const int cdim = values.empty() ? 0 : values[0].size();
  std::vector<Polynomial> comps(cdim, Polynomial(basis.dim()));
  for (int k = 0; k < cdim; ++k) {
    Polynomial pk(basis.dim());
    for (int j = 0; j < basis.size(); ++j) pk.axpy(basis.basis()[j], values[j][k]);
    comps[k] = std::move(pk);
  }
  return PolynomialVector(std::move(comps));
}

} // namespace curv
