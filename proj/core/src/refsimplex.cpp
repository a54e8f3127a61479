#include "curv/refsimplex.hpp"

#include <array>
#include <cmath>
#include <map>

#include "curv/errors.hpp"
#include "curv/lagrange.hpp"

namespace curv {
namespace refsimplex {

namespace {

const std::vector<std::vector<std::vector<int>>>& tables(int dim) {
  // tables(dim)[codim][subIndex] -> parent corner indices
  static const std::vector<std::vector<std::vector<int>>> dim1 = {
      {{0, 1}},
      {{0}, {1}},
  };
  static const std::vector<std::vector<std::vector<int>>> dim2 = {
      {{0, 1, 2}},
      {{0, 1}, {0, 2}, {1, 2}},
      {{0}, {1}, {2}},
  };
  static const std::vector<std::vector<std::vector<int>>> dim3 = {
      {{0, 1, 2, 3}},
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
      {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}},
      {{0}, {1}, {2}, {3}},
  };
  switch (dim) {
  case 1: return dim1;
  case 2: return dim2;
  case 3: return dim3;
  default: throw DimensionError("reference simplex dimension must be 1..3");
  }
}

} // namespace

int numCorners(int dim) { return dim + 1; }

int numSubentities(int dim, int codim) {
  const auto& t = tables(dim);
  if (codim < 0 || codim >= static_cast<int>(t.size()))
    throw DimensionError("invalid codimension " + std::to_string(codim) + " for dim " + std::to_string(dim));
  return static_cast<int>(t[codim].size());
}

const std::vector<int>& subentityCorners(int dim, int codim, int subIndex) {
  const auto& t = tables(dim);
  if (codim < 0 || codim >= static_cast<int>(t.size()))
    throw DimensionError("invalid codimension " + std::to_string(codim));
  if (subIndex < 0 || subIndex >= static_cast<int>(t[codim].size()))
    throw DimensionError("invalid subentity index " + std::to_string(subIndex));
  return t[codim][subIndex];
}

Vec center(int dim) {
  Vec c(dim);
  for (int i = 0; i < dim; ++i) c[i] = 1.0 / (dim + 1);
  return c;
}

Vec cornerCoordinate(int dim, int corner) {
  Vec c(dim);
  if (corner > 0) c[corner - 1] = 1.0;
  return c;
}

bool inside(const Vec& r, double tol) {
  double sum = 0;
  for (int i = 0; i < r.size(); ++i) {
    if (r[i] < -tol) return false;
    sum += r[i];
  }
  return sum <= 1.0 + tol;
}

namespace {

// integer tuple of a corner, scaled by the grid side n
std::array<int, 3> cornerTuple(int corner, int n) {
  std::array<int, 3> t = {0, 0, 0};
  if (corner > 0) t[corner - 1] = n;
  return t;
}

std::map<std::array<int, 3>, int> tupleIndex(int dim, int order) {
  std::map<std::array<int, 3>, int> idx;
  const auto grid = simplexGridEnumerate(dim, order);
  for (size_t i = 0; i < grid.size(); ++i) idx[grid[i]] = static_cast<int>(i);
  return idx;
}

} // namespace

std::vector<int> cornerNodeIndices(int dim, int order) {
  const auto idx = tupleIndex(dim, order);
  std::vector<int> out;
  for (int c = 0; c <= dim; ++c) out.push_back(idx.at(cornerTuple(c, order)));
  return out;
}

std::vector<int> subentityNodeIndices(int dim, int order, int codim, int subIndex) {
  const auto& corners = subentityCorners(dim, codim, subIndex);
  const int subdim = dim - codim;
  const auto idx = tupleIndex(dim, order);

  if (subdim == 0) return {idx.at(cornerTuple(corners[0], order))};

  // Affine embedding of the subentity grid into the parent integer grid.
  const auto base = cornerTuple(corners[0], order);
  std::vector<int> out;
  for (const auto& s : simplexGridEnumerate(subdim, order)) {
    std::array<int, 3> t = base;
    for (int k = 0; k < subdim; ++k) {
      const auto ck = cornerTuple(corners[k + 1], order);
      for (int j = 0; j < 3; ++j) t[j] += s[k] * (ck[j] - base[j]) / order;
    }
    out.push_back(idx.at(t));
  }
  return out;
}

Vec referenceOutwardNormal(int dim, int subIndex) {
  if (dim == 1) return subIndex == 0 ? Vec{-1.0} : Vec{1.0};
  if (dim == 2) {
    switch (subIndex) {
    case 0: return Vec{0.0, -1.0};
    case 1: return Vec{-1.0, 0.0};
    case 2: {
      const double s = 1.0 / std::sqrt(2.0);
      return Vec{s, s};
    }
    }
  }
  if (dim == 3) {
    switch (subIndex) {
    case 0: return Vec{0.0, 0.0, -1.0};
    case 1: return Vec{0.0, -1.0, 0.0};
    case 2: return Vec{-1.0, 0.0, 0.0};
    case 3: {
      const double s = 1.0 / std::sqrt(3.0);
      return Vec{s, s, s};
    }
    }
  }
  throw DimensionError("invalid face index for reference normal");
}

} // namespace refsimplex
} // namespace curv
