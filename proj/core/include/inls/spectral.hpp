#pragma once

#include <array>
#include <complex>
#include <vector>

#include "inls/grid.hpp"

namespace inls {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// FFT machinery for one cartesian grid. Plans are created with
// FFTW_ESTIMATE so plan choice (and therefore rounding) is deterministic.
// Instances are cached per thread; use engine_for().
class SpectralEngine {
 public:
  explicit SpectralEngine(const GridSpec& g);
  ~SpectralEngine();
  SpectralEngine(const SpectralEngine&) = delete;
  SpectralEngine& operator=(const SpectralEngine&) = delete;

  const GridSpec& grid() const { return grid_; }

  // Unnormalized index-space DFT; inverse includes the 1/prod(n) factor.
  void forward(const cvec& in, cvec& out);
  void inverse(const cvec& in, cvec& out);

  // u <- exp(tau * i * Lap) u, the exact free flow on the grid
  // (spectrum multiplier e^{-i |k|^2 tau}). Returns the spectral kinetic
  // integral sum |k|^2 |u_hat|^2 * h^d / prod(n) when want_kinetic.
  double free_propagate(cvec& field, double tau, bool want_kinetic = false);

  // Gradient components by spectral differentiation (grad[0..dims-1]).
  void gradients(const cvec& field, std::array<cvec, 3>& grad);

  // Discrete integral of |grad u|^2 (Plancherel form).
  double kinetic(const cvec& field);

  // 2/3-rule spectral truncation in place.
  void dealias(cvec& field);

  // Spectrum of e^{-i t Lap} u (unnormalized index DFT). For Hdot1 norms of
  // differences use hdot1_of_spectrum_diff.
  void pullback_spectrum(const cvec& field, double t, cvec& out_spec);
  double hdot1_of_spectrum_diff(const cvec& spec_a, const cvec& spec_b);

  // Trig-interpolant evaluation of the field at points lambda*x (per axis),
  // i.e. samples of u(lambda x) on the same grid. Reads the periodic
  // extension where lambda*x leaves the box.
  cvec resample_scaled(const cvec& field, double lambda);

 private:
  GridSpec grid_;
  std::size_t total_;
  std::vector<double> k_;  // per-axis FFT-ordered wavenumbers
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  cplx* buf_ = nullptr;
  double cached_tau_ = 0.0;
  bool phase_valid_ = false;
  std::vector<cplx> phase_;  // e^{-i|k|^2 tau} table for cached_tau_

  void run_fwd();
  void run_bwd();
  void build_phase(double tau);
  template <class F>
  void for_each_mode(F&& f) const;  // f(flat_index, |k|^2)
};

// Per-thread engine cache.
SpectralEngine& engine_for(const GridSpec& g);

}  // namespace inls
