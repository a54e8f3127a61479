#include "curv/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curv/errors.hpp"

namespace curv {

namespace {

constexpr int kMaxCachedPower = 64;

// x^n by repeated multiplication. Shared by the cached and uncached
// evaluation paths so both produce identical bits.
double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

bool powersLess(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void checkDim(int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("polynomial dimension must be 1..3, got " + std::to_string(dim));
}

} // namespace

struct Polynomial::EvalPlan {
  // Flattened canonical monomials: prefactors[i] and powers[i*3 + j].
  std::vector<double> prefactors;
  std::vector<int> powers; // padded with zeros up to 3 entries per monomial
  int maxPow = 0;
};

Polynomial::Polynomial(int dim) : dim_(dim) { checkDim(dim); }

Polynomial::Polynomial(int dim, const Monomial& m) : dim_(dim) {
  checkDim(dim);
  *this += m;
}

Polynomial Polynomial::constant(int dim, double c) {
  Polynomial p(dim);
  p += Monomial(c, std::vector<int>(dim, 0));
  return p;
}

Polynomial Polynomial::variable(int dim, int iDim) {
  checkDim(dim);
  if (iDim < 0 || iDim >= dim)
    throw DimensionError("variable index " + std::to_string(iDim) + " out of range for dim " + std::to_string(dim));
  std::vector<int> pow(dim, 0);
  pow[iDim] = 1;
  Polynomial p(dim);
  p += Monomial(1.0, pow);
  return p;
}

void Polynomial::canonicalize() {
  std::sort(monomials_.begin(), monomials_.end(),
            [](const Monomial& a, const Monomial& b) { return powersLess(a.powers, b.powers); });
  std::vector<Monomial> out;
  out.reserve(monomials_.size());
  for (const Monomial& m : monomials_) {
    if (!out.empty() && out.back().powers == m.powers)
      out.back().prefactor += m.prefactor;
    else
      out.push_back(m);
  }
  std::erase_if(out, [](const Monomial& m) { return m.prefactor == 0.0; });
  monomials_ = std::move(out);
  plan_.reset();
}

Polynomial& Polynomial::operator+=(const Monomial& m) {
  if (static_cast<int>(m.powers.size()) != dim_)
    throw DimensionError("monomial power count does not match polynomial dimension");
  for (int p : m.powers)
    if (p < 0) throw DimensionError("negative monomial power");
  monomials_.push_back(m);
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.dim_ != dim_) throw DimensionError("polynomial dimension mismatch in addition");
  monomials_.insert(monomials_.end(), other.monomials_.begin(), other.monomials_.end());
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return axpy(other, -1.0); }

Polynomial& Polynomial::operator+=(double c) { return *this += Monomial(c, std::vector<int>(dim_, 0)); }

Polynomial& Polynomial::operator*=(double c) {
  for (Monomial& m : monomials_) m.prefactor *= c;
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  if (other.dim_ != dim_) throw DimensionError("polynomial dimension mismatch in multiplication");
  std::vector<Monomial> prod;
  prod.reserve(monomials_.size() * other.monomials_.size());
  for (const Monomial& a : monomials_)
    for (const Monomial& b : other.monomials_) {
      Monomial m;
      m.prefactor = a.prefactor * b.prefactor;
      m.powers.resize(dim_);
      for (int j = 0; j < dim_; ++j) m.powers[j] = a.powers[j] + b.powers[j];
      prod.push_back(std::move(m));
    }
  monomials_ = std::move(prod);
  canonicalize();
  return *this;
}

Polynomial& Polynomial::axpy(const Polynomial& other, double c) {
  if (other.dim_ != dim_) throw DimensionError("polynomial dimension mismatch in axpy");
  for (const Monomial& m : other.monomials_)
    monomials_.emplace_back(m.prefactor * c, m.powers);
  canonicalize();
  return *this;
}

Polynomial Polynomial::derivative(int iDim) const {
  if (iDim < 0 || iDim >= dim_)
    throw DimensionError("derivative index " + std::to_string(iDim) + " out of range for dim " + std::to_string(dim_));
  Polynomial d(dim_);
  for (const Monomial& m : monomials_) {
    if (m.powers[iDim] == 0) continue;
    Monomial dm = m;
    dm.prefactor *= dm.powers[iDim];
    dm.powers[iDim] -= 1;
    d.monomials_.push_back(std::move(dm));
  }
  d.canonicalize();
  return d;
}

double Polynomial::evaluate(const Vec& point) const {
  if (point.size() != dim_) throw DimensionError("evaluation point dimension mismatch");
  if (plan_ && plan_->maxPow < kMaxCachedPower) {
    // Shared power tables on the stack; the multiplication order matches
    // the plain path, so results are bit-identical.
    double pw[3][kMaxCachedPower + 1];
    for (int j = 0; j < dim_; ++j) {
      double r = 1.0;
      pw[j][0] = 1.0;
      for (int k = 1; k <= plan_->maxPow; ++k) {
        r *= point[j];
        pw[j][k] = r;
      }
    }
    double acc = 0.0;
    const size_t n = plan_->prefactors.size();
    for (size_t i = 0; i < n; ++i) {
      double t = plan_->prefactors[i];
      for (int j = 0; j < dim_; ++j) t *= pw[j][plan_->powers[i * 3 + j]];
      acc += t;
    }
    return acc;
  }
  double acc = 0.0;
  for (const Monomial& m : monomials_) {
    double t = m.prefactor;
    for (int j = 0; j < dim_; ++j) t *= ipow(point[j], m.powers[j]);
    acc += t;
  }
  return acc;
}

double Polynomial::integrateRefSimplex() const {
  // Closed forms per monomial u^a v^b w^c:
  //   1D: 1/(a+1),  2D: a!b!/(a+b+2)!,  3D: a!b!c!/(a+b+c+3)!
  // evaluated as incremental products of small ratios.
  double total = 0.0;
  for (const Monomial& m : monomials_) {
    double val = 1.0;
    if (dim_ == 1) {
      val = 1.0 / (m.powers[0] + 1);
    } else if (dim_ == 2) {
      const int a = m.powers[0], b = m.powers[1];
      // a!b!/(a+b)! = prod_{k=1..b} k/(a+k), then divide the two trailing factors
      for (int k = 1; k <= b; ++k) val *= static_cast<double>(k) / (a + k);
      val /= static_cast<double>(a + b + 1) * (a + b + 2);
    } else {
      const int a = m.powers[0], b = m.powers[1], c = m.powers[2];
      for (int k = 1; k <= b; ++k) val *= static_cast<double>(k) / (a + k);
      for (int k = 1; k <= c; ++k) val *= static_cast<double>(k) / (a + b + k);
      val /= static_cast<double>(a + b + c + 1) * (a + b + c + 2) * (a + b + c + 3);
    }
    total += m.prefactor * val;
  }
  return total;
}

int Polynomial::order() const {
  int o = 0;
  for (const Monomial& m : monomials_) o = std::max(o, m.totalDegree());
  return o;
}

double Polynomial::magnitude() const {
  double m = 0.0;
  for (const Monomial& mo : monomials_) m = std::max(m, std::abs(mo.prefactor));
  return m;
}

std::string Polynomial::toString() const {
  static const char* names[3] = {"u", "v", "w"};
  if (monomials_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Monomial& m : monomials_) {
    if (!first) os << " + ";
    first = false;
    os << m.prefactor;
    for (int j = 0; j < dim_; ++j) {
      if (m.powers[j] == 0) continue;
      os << " * " << names[j];
      if (m.powers[j] > 1) os << '^' << m.powers[j];
    }
  }
  return os.str();
}

Polynomial Polynomial::cache() const {
  Polynomial p = *this;
  auto plan = std::make_shared<EvalPlan>();
  plan->prefactors.reserve(monomials_.size());
  plan->powers.assign(monomials_.size() * 3, 0);
  for (size_t i = 0; i < monomials_.size(); ++i) {
    plan->prefactors.push_back(monomials_[i].prefactor);
    for (int j = 0; j < dim_; ++j) {
      plan->powers[i * 3 + j] = monomials_[i].powers[j];
      plan->maxPow = std::max(plan->maxPow, monomials_[i].powers[j]);
    }
  }
  p.plan_ = std::move(plan);
  return p;
}

bool Polynomial::sameMonomials(const Polynomial& other, double tol) const {
  if (other.dim_ != dim_) return false;
  Polynomial diff = *this;
  diff -= other;
  return diff.magnitude() <= tol;
}

PolynomialVector::PolynomialVector(int dim, int size) : dim_(dim), comps_(size, Polynomial(dim)) {}

PolynomialVector::PolynomialVector(std::vector<Polynomial> comps) : comps_(std::move(comps)) {
  if (comps_.empty()) throw DimensionError("empty polynomial vector");
  dim_ = comps_[0].dim();
  for (const Polynomial& p : comps_)
    if (p.dim() != dim_) throw DimensionError("mixed dimensions in polynomial vector");
}

Vec PolynomialVector::evaluate(const Vec& point) const {
  Vec out(size());
  for (int i = 0; i < size(); ++i) out[i] = comps_[i].evaluate(point);
  return out;
}

PolynomialMatrix PolynomialVector::jacobian() const {
  PolynomialMatrix j(dim_, dim_, size());
  for (int i = 0; i < dim_; ++i)
    for (int c = 0; c < size(); ++c) j(i, c) = comps_[c].derivative(i);
  return j;
}

PolynomialVector PolynomialVector::cache() const {
  PolynomialVector v = *this;
  for (int i = 0; i < v.size(); ++i) v.comps_[i] = v.comps_[i].cache();
  return v;
}

PolynomialMatrix::PolynomialMatrix(int dim, int rows, int cols)
    : dim_(dim), rows_(rows), cols_(cols), elems_(rows * cols, Polynomial(dim)) {}

Mat PolynomialMatrix::evaluate(const Vec& point) const {
  Mat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).evaluate(point);
  return m;
}

PolynomialMatrix PolynomialMatrix::cache() const {
  PolynomialMatrix m = *this;
  for (Polynomial& p : m.elems_) p = p.cache();
  return m;
}

bool solveSquare(Mat a, Vec b, Vec& x) {
  const int n = a.rows();
  if (n != a.cols() || b.size() != n) throw DimensionError("solveSquare shape mismatch");
  std::array<int, 3> perm = {0, 1, 2};
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(perm[i], k)) > std::abs(a(perm[piv], k))) piv = i;
    std::swap(perm[k], perm[piv]);
    const double akk = a(perm[k], k);
    if (akk == 0.0 || !std::isfinite(akk)) return false;
    for (int i = k + 1; i < n; ++i) {
      const double f = a(perm[i], k) / akk;
      for (int j = k; j < n; ++j) a(perm[i], j) -= f * a(perm[k], j);
      b[perm[i]] -= f * b[perm[k]];
    }
  }
  x = Vec(n);
  for (int k = n - 1; k >= 0; --k) {
    double s = b[perm[k]];
    for (int j = k + 1; j < n; ++j) s -= a(perm[k], j) * x[j];
    x[k] = s / a(perm[k], k);
  }
  return true;
}

} // namespace curv
