#ifndef CURV_QUADRATURE_HPP
#define CURV_QUADRATURE_HPP

#include <memory>
#include <string>
#include <vector>

#include "curv/errors.hpp"
#include "curv/smallvec.hpp"

namespace curv {

/// Sampling points and weights over the reference simplex. Weights sum to
/// the reference volume (1, 1/2, 1/6).
struct QuadratureRule {
  int dim = 0;
  int order = 0;
  std::vector<Vec> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Map a unit-cube point onto the reference simplex. Returns the simplex
/// point and the volume factor g of the transform:
///   1D: identity, g = 1
///   2D: (x, (1-x) t),                 g = (1-x)
///   3D: (x, (1-x) t, (1-x)(1-t) tau), g = (1-x)^2 (1-t)
std::pair<Vec, double> duffyMap(int dim, const Vec& cubePoint);

/// Gauss-Legendre rule on [0,1] with enough points to integrate
/// polynomials of the given degree exactly.
void gaussLegendre01(int degree, std::vector<double>& points, std::vector<double>& weights);

/// Simplex rule exact for total polynomial degree <= order, built as a
/// tensor product of 1D Gauss rules pushed through the Duffy transform.
/// Rules are memoized per (dim, order); safe under concurrent first access.
std::shared_ptr<const QuadratureRule> simplexRule(int dim, int order);

enum class NormType { L1, L2, Linf };

struct IntegratorConfig {
  double relTolerance = 1e-5;
  double absTolerance = 1e-10; // accuracy goal near zero
  NormType normType = NormType::L2;
  int maxOrder = 61;
};

/// Integration result plus the quadrature order at which it converged.
template <class T>
struct StatInfo {
  T value{};
  int convergenceOrder = 0;
};

namespace detail {

// Shape-erased accumulate / compare helpers for the supported result types.
template <class T>
struct ValueOps;

template <>
struct ValueOps<double> {
  static double zeroLike(double) { return 0.0; }
  static void axpy(double& acc, double w, double v) { acc += w * v; }
  static double norm(double v, NormType) { return std::abs(v); }
  static double diffNorm(const double& a, const double& b, NormType) { return std::abs(a - b); }
  static int numComponents(double) { return 1; }
  static double getComponent(const double& v, int) { return v; }
  static void setComponent(double& v, int, double x) { v = x; }
};

template <>
struct ValueOps<Vec> {
  static Vec zeroLike(const Vec& v) { return Vec::zero(v.size()); }
  static void axpy(Vec& acc, double w, const Vec& v) { acc.axpy(w, v); }
  static double norm(const Vec& v, NormType n) {
    switch (n) {
    case NormType::L1: return v.oneNorm();
    case NormType::Linf: return v.infNorm();
    default: return v.twoNorm();
    }
  }
  static double diffNorm(const Vec& a, const Vec& b, NormType n) { return norm(a - b, n); }
  static int numComponents(const Vec& v) { return v.size(); }
  static double getComponent(const Vec& v, int i) { return v[i]; }
  static void setComponent(Vec& v, int i, double x) { v[i] = x; }
};

template <>
struct ValueOps<Mat> {
  static Mat zeroLike(const Mat& m) { return Mat(m.rows(), m.cols()); }
  static void axpy(Mat& acc, double w, const Mat& m) {
    Mat t = m;
    t *= w;
    acc += t;
  }
  static double norm(const Mat& m, NormType n) {
    switch (n) {
    case NormType::L1: return m.oneNorm();
    case NormType::Linf: return m.infNorm();
    default: return m.frobeniusNorm();
    }
  }
  static double diffNorm(const Mat& a, const Mat& b, NormType n) { return norm(a - b, n); }
  static int numComponents(const Mat& m) { return m.rows() * m.cols(); }
  static double getComponent(const Mat& m, int i) { return m(i / m.cols(), i % m.cols()); }
  static void setComponent(Mat& m, int i, double x) { m(i / m.cols(), i % m.cols()) = x; }
};

template <>
struct ValueOps<std::vector<double>> {
  static std::vector<double> zeroLike(const std::vector<double>& v) {
    return std::vector<double>(v.size(), 0.0);
  }
  static void axpy(std::vector<double>& acc, double w, const std::vector<double>& v) {
    if (acc.size() != v.size()) throw DimensionError("integrand changed its result size");
    for (size_t i = 0; i < v.size(); ++i) acc[i] += w * v[i];
  }
  static double norm(const std::vector<double>& v, NormType n) {
    double s = 0;
    for (double x : v) {
      switch (n) {
      case NormType::L1: s += std::abs(x); break;
      case NormType::Linf: s = std::max(s, std::abs(x)); break;
      default: s += x * x;
      }
    }
    return n == NormType::L2 ? std::sqrt(s) : s;
  }
  static double diffNorm(const std::vector<double>& a, const std::vector<double>& b, NormType n) {
    std::vector<double> d = a;
    for (size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
    return norm(d, n);
  }
  static int numComponents(const std::vector<double>& v) { return static_cast<int>(v.size()); }
  static double getComponent(const std::vector<double>& v, int i) { return v[i]; }
  static void setComponent(std::vector<double>& v, int i, double x) { v[i] = x; }
};

/// Iterated Aitken delta-squared extrapolation of a scalar estimate
/// sequence. Levels with vanishing denominators fall back to the raw tail
/// value, which keeps already-exact sequences untouched.
inline double aitkenLimit(std::vector<double> s) {
  while (s.size() >= 3) {
    std::vector<double> next;
    next.reserve(s.size() - 2);
    for (size_t i = 0; i + 2 < s.size(); ++i) {
      const double d1 = s[i + 1] - s[i];
      const double d2 = s[i + 2] - s[i + 1];
      const double den = d2 - d1;
      const double scale = std::abs(s[i + 2]) + std::abs(d1) + std::abs(d2);
      if (std::abs(den) <= 1e-15 * scale || den == 0.0)
        next.push_back(s[i + 2]);
      else
        next.push_back(s[i + 2] - d2 * d2 / den);
    }
    s = std::move(next);
  }
  return s.back();
}

} // namespace detail

/// Thrown when the order ladder reaches maxOrder without convergence.
/// Carries the best (last) estimate.
template <class T>
class QuadratureNoConvergence : public ConvergenceError {
public:
  QuadratureNoConvergence(StatInfo<T> best, const std::string& what)
      : ConvergenceError(what), best_(std::move(best)) {}
  const StatInfo<T>& best() const { return best_; }

private:
  StatInfo<T> best_;
};

/// Apply a fixed rule to an integrand over the reference simplex. The
/// integrand is evaluated once per point regardless of result arity.
template <class F>
auto integrateFixed(const QuadratureRule& rule, F&& integrand) {
  using T = std::decay_t<decltype(integrand(std::declval<const Vec&>()))>;
  using Ops = detail::ValueOps<T>;
  T first = integrand(rule.points[0]);
  T acc = Ops::zeroLike(first);
  Ops::axpy(acc, rule.weights[0], first);
  for (int i = 1; i < rule.size(); ++i) Ops::axpy(acc, rule.weights[i], integrand(rule.points[i]));
  return acc;
}

/// Increase the quadrature order one step at a time until two successive
/// estimates agree to max(relTol * |I|, absTol) in the selected norm.
///
/// Orders whose tensor rule is identical to the previous one (the 1D Gauss
/// point count grows every other order) are skipped: comparing an estimate
/// against itself would fake convergence. Raw estimates are accelerated by
/// component-wise iterated Aitken extrapolation; without it, integrands
/// with boundary singularities (sqrt-type) converge too slowly for the
/// returned value to actually carry the requested accuracy. Exact
/// (polynomial) sequences pass through the extrapolation unchanged.
template <class F>
auto integrateRecursive(int dim, F&& integrand, const IntegratorConfig& cfg = {}) {
  using T = std::decay_t<decltype(integrand(std::declval<const Vec&>()))>;
  using Ops = detail::ValueOps<T>;
  if (cfg.relTolerance <= 0 || cfg.absTolerance <= 0)
    throw DimensionError("integrator tolerances must be positive");
  constexpr double safety = 3.0;

  std::vector<T> raw;
  std::vector<std::vector<double>> comps; // per component, the raw sequence
  auto extrapolated = [&]() {
    T out = raw.back();
    for (size_t c = 0; c < comps.size(); ++c)
      Ops::setComponent(out, static_cast<int>(c), detail::aitkenLimit(comps[c]));
    return out;
  };

  T prevExtrap{};
  bool havePrev = false;
  int prevSize = -1;
  for (int order = 1; order <= cfg.maxOrder; ++order) {
    auto rule = simplexRule(dim, order);
    if (rule->size() == prevSize) continue;
    prevSize = rule->size();
    raw.push_back(integrateFixed(*rule, integrand));
    if (comps.empty()) comps.resize(Ops::numComponents(raw.back()));
    for (size_t c = 0; c < comps.size(); ++c)
      comps[c].push_back(Ops::getComponent(raw.back(), static_cast<int>(c)));

    T cur = extrapolated();
    if (havePrev) {
      const double diff = Ops::diffNorm(cur, prevExtrap, cfg.normType);
      const double scale = Ops::norm(cur, cfg.normType);
      if (diff <= std::max(cfg.relTolerance * scale, cfg.absTolerance) / safety)
        return StatInfo<T>{std::move(cur), order};
    }
    prevExtrap = std::move(cur);
    havePrev = true;
  }
  throw QuadratureNoConvergence<T>(StatInfo<T>{std::move(prevExtrap), cfg.maxOrder},
                                   "quadrature did not converge by order " + std::to_string(cfg.maxOrder));
}

} // namespace curv

#endif
