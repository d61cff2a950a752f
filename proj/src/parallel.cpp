#include "vortexlab/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace vortexlab::parallel {

namespace {

std::atomic<int> g_override{0};

int default_count() {
  if (const char* env = std::getenv("VORTEXLAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

}  // namespace

int thread_count() {
  const int o = g_override.load(std::memory_order_relaxed);
  return o > 0 ? o : default_count();
}

void set_thread_count(int n) { g_override.store(n > 0 ? n : 0); }

}  // namespace vortexlab::parallel
