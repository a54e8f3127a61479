#ifndef CURV_TESTUTIL_HPP
#define CURV_TESTUTIL_HPP

#include <cmath>
#include <random>
#include <vector>

#include "curv/poly.hpp"
#include "curv/smallvec.hpp"

namespace curvtest {

inline bool approxRel(double got, double expected, double relTol, double absTol = 0.0) {
  const double diff = std::abs(got - expected);
  return diff <= std::max(relTol * std::abs(expected), absTol);
}

/// Random point strictly inside the reference simplex.
inline curv::Vec randomInterior(int dim, std::mt19937& rng, double margin = 0.05) {
  std::uniform_real_distribution<double> uni(margin, 1.0 - margin);
  for (;;) {
    curv::Vec r(dim);
    double sum = 0;
    for (int i = 0; i < dim; ++i) {
      r[i] = uni(rng);
      sum += r[i];
    }
    if (sum <= 1.0 - margin) return r;
  }
}

inline curv::Polynomial randomPolynomial(int dim, int order, std::mt19937& rng, int terms = 6) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_int_distribution<int> powd(0, order);
  curv::Polynomial p(dim);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> pow(dim, 0);
    int left = order;
    for (int j = 0; j < dim; ++j) {
      pow[j] = std::min(left, powd(rng));
      left -= pow[j];
    }
    p += curv::Monomial(coeff(rng), pow);
  }
  return p;
}

} // namespace curvtest

#endif
