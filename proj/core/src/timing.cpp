#include "curv/timing.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <map>
#include <sstream>

#include "curv/communicator.hpp"

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace curv {

void TimingLog::add(const std::string& name, double seconds) {
  for (auto& [n, s] : entries_)
    if (n == name) {
      s += seconds;
      return;
    }
  entries_.emplace_back(name, seconds);
}

double TimingLog::total(const std::string& name) const {
  for (const auto& [n, s] : entries_)
    if (n == name) return s;
  return 0.0;
}

namespace {

struct TimingWire {
  char name[96];
  double seconds;
};
static_assert(std::is_trivially_copyable_v<TimingWire>);

} // namespace

std::string TimingLog::reportParallel(Communicator& comm) const {
  std::vector<TimingWire> mine;
  for (const auto& [name, seconds] : entries_) {
    TimingWire w{};
    std::strncpy(w.name, name.c_str(), sizeof(w.name) - 1);
    w.seconds = seconds;
    mine.push_back(w);
  }
  std::vector<int> lens;
  const auto all = allGather(comm, mine, lens, 90);

  // min/max per action; keep first-appearance order
  std::vector<std::string> order;
  std::map<std::string, std::pair<double, double>> range;
  for (const auto& w : all) {
    const std::string name(w.name);
    auto [it, fresh] = range.try_emplace(name, w.seconds, w.seconds);
    if (fresh)
      order.push_back(name);
    else {
      it->second.first = std::min(it->second.first, w.seconds);
      it->second.second = std::max(it->second.second, w.seconds);
    }
  }
  std::ostringstream os;
  os << "Min time [s]\tMax time [s]\tAction\n";
  os.precision(6);
  os << std::fixed;
  for (const std::string& name : order)
    os << range[name].first << '\t' << range[name].second << '\t' << name << '\n';
  return os.str();
}

long currentMemoryKb() {
#if defined(__GLIBC__) && __GLIBC__ >= 2 && __GLIBC_MINOR__ >= 33
  const struct mallinfo2 mi = mallinfo2();
  return static_cast<long>(mi.uordblks / 1024);
#else
  return 0;
#endif
}

} // namespace curv
