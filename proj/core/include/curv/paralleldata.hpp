#ifndef CURV_PARALLELDATA_HPP
#define CURV_PARALLELDATA_HPP

#include <string>
#include <vector>

#include "curv/grid.hpp"

namespace curv {

/// Sorted parallel output: one row per interior element, ascending by the
/// element global index, written by rank 0 into a single file:
///   <globalIndex> <nDof> <v_1> ... <v_nDof>
/// With mesh-provided element indices the file content is independent of
/// the rank count. nDof[i] entries of data belong to interior element i,
/// concatenated in local element order.
void writeSortedParallelData(const CurvGrid& grid, const std::vector<int>& nDof,
                             const std::vector<double>& data, const std::string& path);

} // namespace curv

#endif
