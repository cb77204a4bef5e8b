#include "inls/threads.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace inls {

int fft_threads() {
  static const int n = [] {
    if (const char* env = std::getenv("INLS_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1) return std::min(v, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? std::min<int>(static_cast<int>(hw), 64) : 1;
  }();
  return n;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void ensure_fftw_threads_init() {
  static const int ok = [] {
    const int r = fftw_init_threads();
    return r;
  }();
  (void)ok;
}

}  // namespace inls
