#include "bmcheck/common/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace bmcheck {
namespace {

std::size_t default_threads() {
  if (const char* env = std::getenv("BMCHECK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<std::size_t>& threads_setting() {
  static std::atomic<std::size_t> threads{default_threads()};
  return threads;
}

}  // namespace

std::size_t thread_count() { return threads_setting().load(); }

void set_thread_count(std::size_t threads) {
  threads_setting().store(threads == 0 ? 1 : threads);
}

}  // namespace bmcheck
