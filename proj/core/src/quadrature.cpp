#include "curv/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace curv {

std::pair<Vec, double> duffyMap(int dim, const Vec& cubePoint) {
  if (cubePoint.size() != dim) throw DimensionError("duffyMap point dimension mismatch");
  switch (dim) {
  case 1:
    return {cubePoint, 1.0};
  case 2: {
    const double x = cubePoint[0], t = cubePoint[1];
    Vec p(2);
    p[0] = x;
    p[1] = (1.0 - x) * t;
    return {p, 1.0 - x};
  }
  case 3: {
    const double x = cubePoint[0], t = cubePoint[1], tau = cubePoint[2];
    Vec p(3);
    p[0] = x;
    p[1] = (1.0 - x) * t;
    p[2] = (1.0 - x) * (1.0 - t) * tau;
    return {p, (1.0 - x) * (1.0 - x) * (1.0 - t)};
  }
  default:
    throw DimensionError("duffyMap dimension must be 1..3");
  }
}

void gaussLegendre01(int degree, std::vector<double>& points, std::vector<double>& weights) {
  const int n = (degree + 2) / 2; // n points integrate degree 2n-1 exactly
  points.resize(n);
  weights.resize(n);
  // Newton iteration on the Legendre roots over [-1,1], then shift to [0,1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    points[i] = 0.5 * (1.0 - x); // descending roots -> ascending points
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

std::shared_ptr<const QuadratureRule> simplexRule(int dim, int order) {
  if (dim < 1 || dim > 3) throw DimensionError("simplexRule dimension must be 1..3");
  if (order < 1) throw DimensionError("simplexRule order must be >= 1");
  if (order > 61) throw Error("simplexRule order " + std::to_string(order) + " beyond available 1D rules (61)");

  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::shared_ptr<const QuadratureRule>> memo;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = memo[{dim, order}];
  if (slot) return slot;

  // The Duffy factor raises the per-axis degree by up to dim-1, so the 1D
  // rules must cover order + dim - 1.
  std::vector<double> p1, w1;
  gaussLegendre01(order + dim - 1, p1, w1);
  auto rule = std::make_shared<QuadratureRule>();
  rule->dim = dim;
  rule->order = order;
  const int m = static_cast<int>(p1.size());
  if (dim == 1) {
    for (int i = 0; i < m; ++i) {
      rule->points.push_back(Vec{p1[i]});
      rule->weights.push_back(w1[i]);
    }
  } else if (dim == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        auto [p, g] = duffyMap(2, Vec{p1[i], p1[j]});
        rule->points.push_back(p);
        rule->weights.push_back(w1[i] * w1[j] * g);
      }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          auto [p, g] = duffyMap(3, Vec{p1[i], p1[j], p1[k]});
          rule->points.push_back(p);
          rule->weights.push_back(w1[i] * w1[j] * w1[k] * g);
        }
  }
  slot = std::move(rule);
  return slot;
}

} // namespace curv
