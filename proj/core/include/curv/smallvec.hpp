#ifndef CURV_SMALLVEC_HPP
#define CURV_SMALLVEC_HPP

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>

namespace curv {

/// Dense coordinate vector of runtime dimension 1..3.
///
/// Used for both local (reference-element) and global (world) coordinates.
/// Stack-only, trivially copyable.
class Vec {
public:
  Vec() = default;
  explicit Vec(int n) : n_(n) { assert(n >= 0 && n <= 3); }
  Vec(std::initializer_list<double> vals) : n_(static_cast<int>(vals.size())) {
    assert(n_ <= 3);
    int i = 0;
    for (double v : vals) c_[i++] = v;
  }

  static Vec zero(int n) { return Vec(n); }

  int size() const { return n_; }
  double& operator[](int i) { assert(i >= 0 && i < n_); return c_[i]; }
  double operator[](int i) const { assert(i >= 0 && i < n_); return c_[i]; }

  Vec& operator+=(const Vec& o) {
    assert(n_ == o.n_);
    for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    assert(n_ == o.n_);
    for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) c_[i] *= s;
    return *this;
  }
  /// this += s * o
  Vec& axpy(double s, const Vec& o) {
    assert(n_ == o.n_);
    for (int i = 0; i < n_; ++i) c_[i] += s * o.c_[i];
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }

  double dot(const Vec& o) const {
    assert(n_ == o.n_);
    double s = 0;
    for (int i = 0; i < n_; ++i) s += c_[i] * o.c_[i];
    return s;
  }
  double twoNorm2() const { return dot(*this); }
  double twoNorm() const { return std::sqrt(twoNorm2()); }
  double infNorm() const {
    double m = 0;
    for (int i = 0; i < n_; ++i) m = std::max(m, std::abs(c_[i]));
    return m;
  }
  double oneNorm() const {
    double s = 0;
    for (int i = 0; i < n_; ++i) s += std::abs(c_[i]);
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Vec& v) {
    os << '(';
    for (int i = 0; i < v.n_; ++i) os << (i ? ", " : "") << v.c_[i];
    return os << ')';
  }

private:
  std::array<double, 3> c_{};
  int n_ = 0;
};

/// Dense matrix with runtime shape, rows/cols in 1..3.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols) {
    assert(rows >= 0 && rows <= 3 && cols >= 0 && cols <= 3);
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  double& operator()(int i, int j) { assert(inRange(i, j)); return a_[i * 3 + j]; }
  double operator()(int i, int j) const { assert(inRange(i, j)); return a_[i * 3 + j]; }

  Mat& operator+=(const Mat& o) {
    assert(r_ == o.r_ && c_ == o.c_);
    for (int i = 0; i < 9; ++i) a_[i] += o.a_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    assert(r_ == o.r_ && c_ == o.c_);
    for (int i = 0; i < 9; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Mat& operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
  }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }

  /// Matrix-vector product (rows x cols) * (cols) -> (rows).
  Vec apply(const Vec& x) const {
    assert(x.size() == c_);
    Vec y(r_);
    for (int i = 0; i < r_; ++i) {
      double s = 0;
      for (int j = 0; j < c_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }
  /// Transposed product (cols) <- (rows): y = A^T x.
  Vec applyTransposed(const Vec& x) const {
    assert(x.size() == r_);
    Vec y(c_);
    for (int j = 0; j < c_; ++j) {
      double s = 0;
      for (int i = 0; i < r_; ++i) s += (*this)(i, j) * x[i];
      y[j] = s;
    }
    return y;
  }
  /// Gram matrix A A^T (rows x rows).
  Mat timesTransposed() const {
    Mat g(r_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j) {
        double s = 0;
        for (int k = 0; k < c_; ++k) s += (*this)(i, k) * (*this)(j, k);
        g(i, j) = s;
      }
    return g;
  }

  /// Determinant of a square matrix (1x1 .. 3x3).
  double det() const {
    assert(r_ == c_ && r_ >= 1);
    const Mat& m = *this;
    switch (r_) {
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
  }

  double frobeniusNorm() const {
    double s = 0;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
  }
  double oneNorm() const {
    double s = 0;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) s += std::abs((*this)(i, j));
    return s;
  }
  double infNorm() const {
    double m = 0;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
  }

private:
  bool inRange(int i, int j) const { return i >= 0 && i < r_ && j >= 0 && j < c_; }

  std::array<double, 9> a_{};
  int r_ = 0, c_ = 0;
};

/// Cross product of the tangent rows of a 2x3 matrix: row0 x row1.
inline Vec crossRows(const Mat& j) {
  assert(j.rows() == 2 && j.cols() == 3);
  Vec n(3);
  n[0] = j(0, 1) * j(1, 2) - j(0, 2) * j(1, 1);
  n[1] = j(0, 2) * j(1, 0) - j(0, 0) * j(1, 2);
  n[2] = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
  return n;
}

/// Solve the small SPD/general square system A x = b by Gaussian elimination
/// with partial pivoting. Returns false if A is numerically singular.
bool solveSquare(Mat a, Vec b, Vec& x);

} // namespace curv

#endif
