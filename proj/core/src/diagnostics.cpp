#include "inls/diagnostics.hpp"

#include <cmath>

namespace inls {

DiagnosticsSample instantaneous_diagnostics(const FieldState& u, const DiagnosticsPlan& plan) {
  if (!plan.weight || !plan.params) throw parameter_error("diagnostics: weight and params required");
  DiagnosticsSample s;
  s.t = u.time;
  s.mass = mass(u);
  const auto parts = energy_parts(u, *plan.weight, *plan.params);
  s.kinetic = parts.kinetic;
  s.potential = parts.potential;
  s.energy = parts.energy;
  s.sup_abs = sup_abs(u);
  if (plan.virial) {
    s.Ma = virial_Ma(u, *plan.virial);
    s.virial_rhs = virial_rhs(u, *plan.virial, *plan.weight, *plan.params);
    s.VR = virial_VR(u, *plan.virial);
  }
  return s;
}

double snorm_integrand(const FieldState& u, int N) {
  if (N <= 2) return 0.0;
  return lp_power_integral(u, 2.0 * (N + 2.0) / (N - 2.0));
}

double scattering_proxy(const FieldState& u1, const FieldState& u2) {
  if (!(u1.grid == u2.grid)) throw parameter_error("scattering_proxy: grid mismatch");
  if (u1.grid.kind != GridKind::cartesian)
    throw parameter_error("scattering_proxy: cartesian grid required");
  auto& eng = engine_for(u1.grid);
  cvec s1, s2;
  eng.pullback_spectrum(u1.samples, u1.time, s1);
  eng.pullback_spectrum(u2.samples, u2.time, s2);
  return eng.hdot1_of_spectrum_diff(s1, s2);
}

VRSeries v_r_series(const std::vector<DiagnosticsSample>& samples, const VirialWeight& w,
                    const ModelParams& p) {
  if (samples.size() < 3) throw parameter_error("v_r_series: at least 3 checkpoints required");
  VRSeries out;
  const std::size_t n = samples.size();
  out.t.resize(n);
  out.VR.resize(n);
  out.d2VR.assign(n, 0.0);
  out.bound.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.t[i] = samples[i].t;
    out.VR[i] = samples[i].VR;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = out.t[i] - out.t[i - 1], hp = out.t[i + 1] - out.t[i];
    out.d2VR[i] = 2.0 * (hm * out.VR[i + 1] - (hm + hp) * out.VR[i] + hp * out.VR[i - 1]) /
                  (hm * hp * (hm + hp));
  }
  // Smallest C so that d2VR <= 4(K - P) + C (R^{-b} K^{N a/4} + R^{-2})
  // at every interior checkpoint; reported, never asserted sharp.
  const double Rb = std::pow(w.R, -p.b), R2 = std::pow(w.R, -2.0);
  double C = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double main = 4.0 * (samples[i].kinetic - samples[i].potential);
    const double shape = Rb * std::pow(samples[i].kinetic, 0.25 * p.N * p.alpha) + R2;
    if (shape > 0.0) C = std::max(C, (out.d2VR[i] - main) / shape);
  }
  out.C_calibrated = C;
  for (std::size_t i = 0; i < n; ++i) {
    const double main = 4.0 * (samples[i].kinetic - samples[i].potential);
    out.bound[i] = main + C * (Rb * std::pow(samples[i].kinetic, 0.25 * p.N * p.alpha) + R2);
  }
  return out;
}

std::vector<double> window_increments(const std::vector<DiagnosticsSample>& samples,
                                      int nwindows) {
  if (samples.size() < 2 || nwindows < 1) return {};
  const double t0 = samples.front().t, t1 = samples.back().t;
  if (!(t1 > t0)) return {};
  std::vector<double> edges(nwindows + 1);
  for (int wi = 0; wi <= nwindows; ++wi) edges[wi] = t0 + (t1 - t0) * wi / nwindows;
  // value of snorm_cum at each edge by linear interpolation between checkpoints
  std::vector<double> at_edges(nwindows + 1);
  std::size_t j = 0;
  for (int wi = 0; wi <= nwindows; ++wi) {
    const double te = edges[wi];
    while (j + 1 < samples.size() && samples[j + 1].t < te) ++j;
    if (j + 1 >= samples.size()) {
      at_edges[wi] = samples.back().snorm_cum;
      continue;
    }
    const double ta = samples[j].t, tb = samples[j + 1].t;
    const double va = samples[j].snorm_cum, vb = samples[j + 1].snorm_cum;
    at_edges[wi] = tb > ta ? va + (vb - va) * (te - ta) / (tb - ta) : va;
  }
  std::vector<double> inc(nwindows);
  for (int wi = 0; wi < nwindows; ++wi) inc[wi] = at_edges[wi + 1] - at_edges[wi];
  return inc;
}

GNFunctional gn_functional(const FieldState& u, int N, double alpha) {
  const double mass_exp = 0.5 * (N + 2.0 - (N - 2.0) * (alpha + 1.0));
  if (mass_exp < 0.0) throw parameter_error("gn_functional: mass exponent negative outside regime");
  GNFunctional g;
  g.lhs = lp_power_integral(u, alpha + 2.0);
  const double m = mass(u), K = gradient_sq_integral(u);
  if (m == 0.0 || K == 0.0) {
    g.degenerate = true;
    return g;
  }
  g.rhs_shape = std::pow(std::sqrt(m), mass_exp) * std::pow(std::sqrt(K), 0.5 * N * alpha);
  return g;
}

}  // namespace inls
