#include "inls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <tuple>

#include "inls/threads.hpp"

namespace inls {

namespace {
using GridKey = std::tuple<int, int, double, bool>;
GridKey key_of(const GridSpec& g) { return {g.dims, g.n, g.L, g.offset}; }
}  // namespace

SpectralEngine::SpectralEngine(const GridSpec& g) : grid_(g), total_(g.total_points()) {
  if (g.kind != GridKind::cartesian)
    throw parameter_error("spectral: cartesian grid required");
  k_ = g.wavenumbers();
  buf_ = reinterpret_cast<cplx*>(fftw_alloc_complex(total_));
  ensure_fftw_threads_init();
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  fftw_plan_with_nthreads(fft_threads());
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  int dims[3] = {g.n, g.n, g.n};
  plan_fwd_ = fftw_plan_dft(g.dims, dims, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft(g.dims, dims, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

SpectralEngine::~SpectralEngine() {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(reinterpret_cast<fftw_complex*>(buf_));
}

void SpectralEngine::run_fwd() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void SpectralEngine::run_bwd() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

template <class F>
void SpectralEngine::for_each_mode(F&& f) const {
  const int n = grid_.n;
  if (grid_.dims == 1) {
    for (int m = 0; m < n; ++m) f(static_cast<std::size_t>(m), k_[m] * k_[m]);
  } else if (grid_.dims == 2) {
    std::size_t idx = 0;
    for (int m0 = 0; m0 < n; ++m0) {
      const double k0 = k_[m0] * k_[m0];
      for (int m1 = 0; m1 < n; ++m1, ++idx) f(idx, k0 + k_[m1] * k_[m1]);
    }
  } else {
    std::size_t idx = 0;
    for (int m0 = 0; m0 < n; ++m0) {
      const double k0 = k_[m0] * k_[m0];
      for (int m1 = 0; m1 < n; ++m1) {
        const double k01 = k0 + k_[m1] * k_[m1];
        for (int m2 = 0; m2 < n; ++m2, ++idx) f(idx, k01 + k_[m2] * k_[m2]);
      }
    }
  }
}

void SpectralEngine::forward(const cvec& in, cvec& out) {
  std::memcpy(buf_, in.data(), total_ * sizeof(cplx));
  run_fwd();
  out.resize(total_);
  std::memcpy(out.data(), buf_, total_ * sizeof(cplx));
}

void SpectralEngine::inverse(const cvec& in, cvec& out) {
  std::memcpy(buf_, in.data(), total_ * sizeof(cplx));
  run_bwd();
  out.resize(total_);
  const double s = 1.0 / static_cast<double>(total_);
  for (std::size_t i = 0; i < total_; ++i) out[i] = buf_[i] * s;
}

void SpectralEngine::build_phase(double tau) {
  if (phase_valid_ && tau == cached_tau_) return;
  phase_.resize(total_);
  for_each_mode([&](std::size_t i, double k2) {
    phase_[i] = std::polar(1.0, -k2 * tau);
  });
  cached_tau_ = tau;
  phase_valid_ = true;
}

double SpectralEngine::free_propagate(cvec& field, double tau, bool want_kinetic) {
  std::memcpy(buf_, field.data(), total_ * sizeof(cplx));
  run_fwd();
  build_phase(tau);
  double kin = 0.0;
  if (want_kinetic) {
    for_each_mode([&](std::size_t i, double k2) { kin += k2 * std::norm(buf_[i]); });
  }
  for (std::size_t i = 0; i < total_; ++i) buf_[i] *= phase_[i];
  run_bwd();
  const double s = 1.0 / static_cast<double>(total_);
  for (std::size_t i = 0; i < total_; ++i) field[i] = buf_[i] * s;
  return want_kinetic ? kin * grid_.cell_volume() / static_cast<double>(total_)
                      : std::numeric_limits<double>::quiet_NaN();
}

void SpectralEngine::gradients(const cvec& field, std::array<cvec, 3>& grad) {
  cvec spec;
  forward(field, spec);
  const int n = grid_.n;
  const double s = 1.0 / static_cast<double>(total_);
  for (int axis = 0; axis < grid_.dims; ++axis) {
    // stride pattern of this axis in the row-major layout
    std::size_t stride = 1;
    for (int d = axis + 1; d < grid_.dims; ++d) stride *= n;
    for (std::size_t i = 0; i < total_; ++i) {
      const int m = static_cast<int>((i / stride) % n);
      buf_[i] = spec[i] * cplx(0.0, k_[m]);
    }
    run_bwd();
    grad[axis].resize(total_);
    for (std::size_t i = 0; i < total_; ++i) grad[axis][i] = buf_[i] * s;
  }
}

double SpectralEngine::kinetic(const cvec& field) {
  std::memcpy(buf_, field.data(), total_ * sizeof(cplx));
  run_fwd();
  double kin = 0.0;
  for_each_mode([&](std::size_t i, double k2) { kin += k2 * std::norm(buf_[i]); });
  return kin * grid_.cell_volume() / static_cast<double>(total_);
}

void SpectralEngine::dealias(cvec& field) {
  std::memcpy(buf_, field.data(), total_ * sizeof(cplx));
  run_fwd();
  const int n = grid_.n;
  const int cut = n / 3;  // keep |m| < n/3
  auto keep = [&](int m) {
    const int mm = m < n / 2 ? m : n - m;
    return mm < cut;
  };
  std::size_t idx = 0;
  if (grid_.dims == 1) {
    for (int m = 0; m < n; ++m, ++idx)
      if (!keep(m)) buf_[idx] = 0.0;
  } else if (grid_.dims == 2) {
    for (int m0 = 0; m0 < n; ++m0)
      for (int m1 = 0; m1 < n; ++m1, ++idx)
        if (!keep(m0) || !keep(m1)) buf_[idx] = 0.0;
  } else {
    for (int m0 = 0; m0 < n; ++m0)
      for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2, ++idx)
          if (!keep(m0) || !keep(m1) || !keep(m2)) buf_[idx] = 0.0;
  }
  run_bwd();
  const double s = 1.0 / static_cast<double>(total_);
  for (std::size_t i = 0; i < total_; ++i) field[i] = buf_[i] * s;
}

void SpectralEngine::pullback_spectrum(const cvec& field, double t, cvec& out_spec) {
  std::memcpy(buf_, field.data(), total_ * sizeof(cplx));
  run_fwd();
  out_spec.resize(total_);
  for_each_mode([&](std::size_t i, double k2) {
    out_spec[i] = buf_[i] * std::polar(1.0, k2 * t);
  });
}

double SpectralEngine::hdot1_of_spectrum_diff(const cvec& a, const cvec& b) {
  double acc = 0.0;
  for_each_mode([&](std::size_t i, double k2) { acc += k2 * std::norm(a[i] - b[i]); });
  return std::sqrt(acc * grid_.cell_volume() / static_cast<double>(total_));
}

cvec SpectralEngine::resample_scaled(const cvec& field, double lambda) {
  const int n = grid_.n;
  cvec spec;
  forward(field, spec);
  // Evaluation matrix E[i][m] = (1/n) e^{i k_m (lambda x_i - x0)}, identical
  // for every axis.
  const double x0 = grid_.coord(0);
  std::vector<cplx> E(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double y = lambda * grid_.coord(i) - x0;
    for (int m = 0; m < n; ++m)
      E[static_cast<std::size_t>(i) * n + m] = std::polar(1.0 / n, k_[m] * y);
  }
  cvec cur = std::move(spec), next(total_);
  for (int axis = 0; axis < grid_.dims; ++axis) {
    std::size_t stride = 1;
    for (int d = axis + 1; d < grid_.dims; ++d) stride *= n;
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total_; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        const cplx* in = cur.data() + base + off;
        cplx* out = next.data() + base + off;
        for (int i = 0; i < n; ++i) {
          cplx acc = 0.0;
          const cplx* row = E.data() + static_cast<std::size_t>(i) * n;
          for (int m = 0; m < n; ++m) acc += row[m] * in[static_cast<std::size_t>(m) * stride];
          out[static_cast<std::size_t>(i) * stride] = acc;
        }
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

SpectralEngine& engine_for(const GridSpec& g) {
  thread_local std::map<GridKey, std::unique_ptr<SpectralEngine>> cache;
  auto key = key_of(g);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<SpectralEngine>(g)).first;
  return *it->second;
}

}  // namespace inls
