#pragma once

#include <mutex>

namespace inls {

// FFT thread count: INLS_THREADS env var, default hardware concurrency
// (clamped to 1..64). Fixed for the lifetime of the process; results are
// bit-reproducible for a fixed value.
int fft_threads();

// FFTW's planner is not thread-safe; all plan creation/destruction goes
// through this lock.
std::mutex& fftw_planner_mutex();
void ensure_fftw_threads_init();

}  // namespace inls
