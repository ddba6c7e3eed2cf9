#include "dcomp/parallel.hpp"

#include <cstdlib>
#include <string>

namespace dcomp {

namespace {

std::size_t default_workers() {
  if (const char* env = std::getenv("DCOMP_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<std::size_t>& workers() {
  static std::atomic<std::size_t> w{default_workers()};
  return w;
}

}  // namespace

std::size_t worker_count() { return workers().load(); }

void set_worker_count(std::size_t n) { workers().store(n == 0 ? default_workers() : n); }

}  // namespace dcomp
