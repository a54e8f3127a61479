#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "curv/errors.hpp"
#include "curv/partition.hpp"

using namespace curv;

namespace {

ElementGraph::Node node(std::int64_t gid, std::vector<std::int64_t> corners, Vec c) {
  ElementGraph::Node n;
  n.globalIndex = gid;
  n.cornerIds = std::move(corners);
  n.center = c;
  return n;
}

// a strip of tets sharing faces, centered along x at the given offset
std::vector<ElementGraph::Node> tetStrip(int count, std::int64_t firstVertex, double xOffset,
                                         std::int64_t firstGid) {
  std::vector<ElementGraph::Node> nodes;
  for (int i = 0; i < count; ++i) {
    // consecutive tets share three corner ids -> a face
    std::vector<std::int64_t> corners = {firstVertex + i, firstVertex + i + 1, firstVertex + i + 2,
                                         firstVertex + i + 3};
    nodes.push_back(node(firstGid + i, corners, Vec{xOffset + 0.25 * i, 0.0, 0.0}));
  }
  return nodes;
}

std::vector<int> sizesOf(const std::vector<int>& parts, int nParts) {
  std::vector<int> s(nParts, 0);
  for (int p : parts) s[p]++;
  return s;
}

} // namespace

TEST_CASE("single part assigns zero to everything") {
  auto g = ElementGraph::build(tetStrip(10, 0, 0.0, 0));
  RcbPartitioner rcb;
  const auto parts = rcb.partition(g, 1);
  for (int p : parts) CHECK(p == 0);
}

TEST_CASE("adjacency is symmetric and loop-free") {
  auto g = ElementGraph::build(tetStrip(6, 0, 0.0, 0));
  for (int e = 0; e < g.size(); ++e) {
    for (int nb : g.adjacency[e]) {
      CHECK(nb != e);
      CHECK(std::find(g.adjacency[nb].begin(), g.adjacency[nb].end(), e) != g.adjacency[nb].end());
    }
  }
  // strip interior elements have two face neighbors
  CHECK(g.adjacency[0].size() == 1);
  CHECK(g.adjacency[3].size() == 2);
}

TEST_CASE("two well-separated blobs split one per part") {
  auto blob1 = tetStrip(5, 0, 0.0, 0);
  auto blob2 = tetStrip(5, 100, 50.0, 5);
  auto all = blob1;
  all.insert(all.end(), blob2.begin(), blob2.end());
  auto g = ElementGraph::build(all);

  RcbPartitioner rcb;
  const auto parts = rcb.partition(g, 2);
  const auto sizes = sizesOf(parts, 2);
  CHECK(sizes == std::vector<int>{5, 5});
  std::set<int> left(parts.begin(), parts.begin() + 5);
  std::set<int> right(parts.begin() + 5, parts.end());
  CHECK(left.size() == 1);
  CHECK(right.size() == 1);
  CHECK(*left.begin() != *right.begin());
}

TEST_CASE("seven elements over three parts balance as 3+2+2") {
  auto g = ElementGraph::build(tetStrip(7, 0, 0.0, 0));
  RcbPartitioner rcb;
  const auto sizes = sizesOf(rcb.partition(g, 3), 3);
  std::multiset<int> ms(sizes.begin(), sizes.end());
  CHECK(ms == std::multiset<int>{2, 2, 3});
}

TEST_CASE("determinism and balance over random inputs") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 40);
    std::vector<ElementGraph::Node> nodes;
    for (int i = 0; i < n; ++i)
      nodes.push_back(node(i, {4LL * i, 4LL * i + 1, 4LL * i + 2, 4LL * i + 3},
                           Vec{coord(rng), coord(rng), coord(rng)}));
    auto g = ElementGraph::build(nodes);
    RcbPartitioner rcb;
    for (int nParts : {1, 2, 3, 4, 7}) {
      const auto a = rcb.partition(g, nParts);
      const auto b = rcb.partition(g, nParts);
      CHECK(a == b);
      for (int p : a) {
        CHECK(p >= 0);
        CHECK(p < nParts);
      }
      const auto sizes = sizesOf(a, nParts);
      const int lo = n / nParts, hi = (n + nParts - 1) / nParts;
      for (int s : sizes) {
        CHECK(s >= std::max(0, lo - 1));
        CHECK(s <= hi + 1);
      }
    }
  }
}

TEST_CASE("more parts than elements leaves parts empty without error") {
  auto g = ElementGraph::build(tetStrip(3, 0, 0.0, 0));
  RcbPartitioner rcb;
  const auto parts = rcb.partition(g, 5);
  const auto sizes = sizesOf(parts, 5);
  int total = 0, empty = 0;
  for (int s : sizes) {
    total += s;
    if (s == 0) ++empty;
  }
  CHECK(total == 3);
  CHECK(empty == 2);
}

TEST_CASE("prescribed partitioner validates and passes through") {
  auto g = ElementGraph::build(tetStrip(4, 0, 0.0, 0));
  PrescribedPartitioner fixed({1, 0, 2, 1});
  CHECK(fixed.partition(g, 3) == std::vector<int>{1, 0, 2, 1});
  CHECK_THROWS_AS((void)fixed.partition(g, 2), DimensionError);
  PrescribedPartitioner wrong({0, 0});
  CHECK_THROWS_AS((void)wrong.partition(g, 2), DimensionError);
}
