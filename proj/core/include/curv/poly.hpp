#ifndef CURV_POLY_HPP
#define CURV_POLY_HPP

#include <memory>
#include <string>
#include <vector>

#include "curv/smallvec.hpp"

namespace curv {

/// One summand of a polynomial: prefactor * u^powers[0] * v^powers[1] * ...
/// The powers vector has exactly as many entries as the owning polynomial
/// has variables.
struct Monomial {
  double prefactor = 0.0;
  std::vector<int> powers;

  Monomial() = default;
  Monomial(double pref, std::vector<int> pow) : prefactor(pref), powers(std::move(pow)) {}

  int totalDegree() const {
    int s = 0;
    for (int p : powers) s += p;
    return s;
  }
};

/// Multivariate polynomial over 1..3 local variables, stored as an expanded
/// sum of monomials in canonical form: monomials sorted by power tuple, no
/// two monomials share a power tuple, no zero prefactors. The zero
/// polynomial is the empty sum.
///
/// Values are immutable in spirit: the compound-assignment operators rebuild
/// the canonical representation, so instances can be freely copied and
/// shared across threads once constructed.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(int dim);
  Polynomial(int dim, const Monomial& m);

  static Polynomial constant(int dim, double c);
  /// The monomial u_iDim (power 1 in one variable).
  static Polynomial variable(int dim, int iDim);

  int dim() const { return dim_; }
  bool isZero() const { return monomials_.empty(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  Polynomial& operator+=(const Monomial& m);
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator+=(double c);
  Polynomial& operator*=(double c);
  Polynomial& operator*=(const Polynomial& other);
  /// this += c * other
  Polynomial& axpy(const Polynomial& other, double c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, double c) { return a *= c; }
  friend Polynomial operator*(double c, Polynomial a) { return a *= c; }
  friend Polynomial operator+(Polynomial a, double c) { return a += c; }
  friend Polynomial operator-(Polynomial a, double c) { return a += -c; }

  /// Partial derivative with respect to variable iDim.
  Polynomial derivative(int iDim) const;

  /// Evaluate at a local coordinate of matching dimension.
  double evaluate(const Vec& point) const;

  /// Exact integral over the reference simplex of the polynomial's dimension
  /// (unit edge, triangle u+v<=1, tetrahedron u+v+w<=1).
  double integrateRefSimplex() const;

  /// Largest total degree among monomials; 0 for the zero polynomial.
  int order() const;
  /// Largest |prefactor|; 0 for the zero polynomial.
  double magnitude() const;

  /// Text form like "2 * u^2 v + 1", variables named u, v, w.
  std::string toString() const;

  /// Returns a copy carrying a precomputed evaluation table. Evaluation
  /// results are bit-identical to the uncached path.
  Polynomial cache() const;

  bool sameMonomials(const Polynomial& other, double tol) const;

private:
  void canonicalize();

  int dim_ = 1;
  std::vector<Monomial> monomials_;

  struct EvalPlan;
  std::shared_ptr<const EvalPlan> plan_; // only set on cache() copies
};

/// Column vector of polynomials sharing one local dimension. Used for
/// symbolic coordinate maps p(r).
class PolynomialVector {
public:
  PolynomialVector() = default;
  PolynomialVector(int dim, int size);
  explicit PolynomialVector(std::vector<Polynomial> comps);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(comps_.size()); }
  Polynomial& operator[](int i) { return comps_[i]; }
  const Polynomial& operator[](int i) const { return comps_[i]; }

  Vec evaluate(const Vec& point) const;
  /// Jacobian d comps_j / d r_i as a (dim x size) matrix of polynomials.
  class PolynomialMatrix jacobian() const;

  PolynomialVector cache() const;

private:
  int dim_ = 1;
  std::vector<Polynomial> comps_;
};

/// Rectangular matrix of polynomials sharing one local dimension.
class PolynomialMatrix {
public:
  PolynomialMatrix() = default;
  PolynomialMatrix(int dim, int rows, int cols);

  int dim() const { return dim_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Polynomial& operator()(int i, int j) { return elems_[i * cols_ + j]; }
  const Polynomial& operator()(int i, int j) const { return elems_[i * cols_ + j]; }

  Mat evaluate(const Vec& point) const;
  PolynomialMatrix cache() const;

private:
  int dim_ = 1;
  int rows_ = 0, cols_ = 0;
  std::vector<Polynomial> elems_;
};

} // namespace curv

#endif
