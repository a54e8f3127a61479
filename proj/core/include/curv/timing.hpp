#ifndef CURV_TIMING_HPP
#define CURV_TIMING_HPP

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace curv {

class Communicator;

/// Named wall-clock intervals accumulated on one rank.
class TimingLog {
public:
  void add(const std::string& name, double seconds);
  double total(const std::string& name) const;
  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

  /// Merge entries across ranks and format the report: one line per action
  /// with the minimum and maximum time over the ranks that ran it.
  /// Collective; every rank receives the same text.
  std::string reportParallel(Communicator& comm) const;

private:
  std::vector<std::pair<std::string, double>> entries_; // insertion order kept
};

/// RAII interval: adds elapsed seconds to the log on destruction.
class ScopedTimer {
public:
  ScopedTimer(TimingLog& log, std::string name)
      : log_(log), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() {
    const auto end = std::chrono::steady_clock::now();
    log_.add(name_, std::chrono::duration<double>(end - start_).count());
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

private:
  TimingLog& log_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

/// Process-local memory counter sampled at stage boundaries (glibc malloc
/// statistics; 0 where unavailable).
long currentMemoryKb();

} // namespace curv

#endif
