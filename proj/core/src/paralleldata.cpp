#include "curv/paralleldata.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "curv/errors.hpp"

namespace curv {

namespace {

struct RowHeaderWire {
  GlobalIndex gid;
  std::int64_t nDof;
};

} // namespace

void writeSortedParallelData(const CurvGrid& grid, const std::vector<int>& nDof,
                             const std::vector<double>& data, const std::string& path) {
  const GridStorage& s = grid.storage();
  Communicator& comm = grid.comm();
  if (static_cast<int>(nDof.size()) != s.nInteriorElements)
    throw DimensionError("one nDof entry per interior element required");
  std::size_t expected = 0;
  for (int n : nDof) expected += n;
  if (data.size() != expected) throw DimensionError("data length does not match the nDof sum");

  // everything goes to rank 0
  std::vector<RowHeaderWire> headers;
  for (int e = 0; e < s.nInteriorElements; ++e)
    headers.push_back({s.elements[e].globalIndex, nDof[e]});

  // every rank addresses rank 0 only
  std::vector<int> lenH(comm.size(), 0), lenD(comm.size(), 0);
  lenH[0] = static_cast<int>(headers.size());
  lenD[0] = static_cast<int>(data.size());
  std::vector<int> outH, outD;
  const auto rxH = allToAll(comm, headers, lenH, outH, 70);
  const auto rxD = allToAll(comm, data, lenD, outD, 71);

  if (comm.rank() == 0) {
    struct Row {
      GlobalIndex gid;
      std::vector<double> values;
    };
    std::vector<Row> rows;
    std::size_t ih = 0, id = 0;
    for (int src = 0; src < comm.size(); ++src) {
      for (int k = 0; k < outH[src]; ++k) {
        const RowHeaderWire& h = rxH[ih++];
        Row row;
        row.gid = h.gid;
        for (std::int64_t v = 0; v < h.nDof; ++v) row.values.push_back(rxD[id++]);
        rows.push_back(std::move(row));
      }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.gid < b.gid; });

    std::ofstream os(path);
    if (!os) throw IoError("cannot write '" + path + "'");
    char buf[64];
    for (const Row& row : rows) {
      os << row.gid << ' ' << row.values.size();
      for (double v : row.values) {
        std::snprintf(buf, sizeof(buf), " %.17g", v);
        os << buf;
      }
      os << '\n';
    }
  }
  comm.barrier();
}

} // namespace curv
