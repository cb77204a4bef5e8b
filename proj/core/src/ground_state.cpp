#include "inls/ground_state.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace inls {

GroundStateProfile::GroundStateProfile(int N, double b) : N_(N), b_(b) {
  if (N < 3 || N > 5) throw dimension_error("ground state: N in {3,4,5} required");
  if (!(b > 0.0) || !(b < 2.0)) throw parameter_error("ground state: 0 < b < 2 required");
  alpha_ = derive_alpha(N, b);
  kappa_ = (N - b) * (N - 2.0);
  m_ = (N - 2.0) / (2.0 - b);
}

double GroundStateProfile::W(double r) const {
  return std::pow(1.0 + std::pow(r, 2.0 - b_) / kappa_, -m_);
}

double GroundStateProfile::dW(double r) const {
  if (r == 0.0) return b_ < 1.0 ? 0.0 : (b_ == 1.0 ? -m_ * (2.0 - b_) / kappa_ : -HUGE_VAL);
  const double y = std::pow(r, 2.0 - b_) / kappa_;
  return -m_ * (2.0 - b_) / kappa_ * std::pow(r, 1.0 - b_) * std::pow(1.0 + y, -m_ - 1.0);
}

double GroundStateProfile::d2W(double r) const {
  const double y = std::pow(r, 2.0 - b_) / kappa_;
  const double cb = (2.0 - b_) / kappa_;
  return -m_ * cb *
         ((1.0 - b_) * std::pow(r, -b_) * std::pow(1.0 + y, -m_ - 1.0) -
          (m_ + 1.0) * cb * std::pow(r, 2.0 - 2.0 * b_) * std::pow(1.0 + y, -m_ - 2.0));
}

double GroundStateProfile::laplacian(double r) const {
  return d2W(r) + (N_ - 1.0) * dW(r) / r;
}

double GroundStateProfile::elliptic_residual(double r) const {
  return laplacian(r) + std::pow(r, -b_) * std::pow(W(r), alpha_ + 1.0);
}

namespace {

struct Integrand {
  const GroundStateProfile* prof;
  bool potential;  // false: W'(r)^2 r^{N-1}; true: r^{N-1-b} W^{alpha+2}
};

double eval_radial(double r, void* params) {
  const auto& I = *static_cast<Integrand*>(params);
  const auto& p = *I.prof;
  if (I.potential)
    return std::pow(r, p.N() - 1.0 - p.b()) * std::pow(p.W(r), p.alpha() + 2.0);
  const double d = p.dW(r);
  return d * d * std::pow(r, p.N() - 1.0);
}

// Same integrand under s = 1/r for the far tail.
double eval_radial_inv(double s, void* params) {
  const double r = 1.0 / s;
  return eval_radial(r, params) * r * r;
}

struct QagResult {
  double value, abserr;
};

QagResult qag(gsl_function* f, double a, double b, gsl_integration_workspace* ws) {
  double v = 0.0, err = 0.0;
  const int status =
      gsl_integration_qag(f, a, b, 0.0, 1e-13, 5000, GSL_INTEG_GAUSS61, ws, &v, &err);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw quadrature_error("ground state quadrature failed (gsl status " +
                               std::to_string(status) + ")",
                           err);
  return {v, err};
}

// integral over [0, inf), split at r_mid with the tail mapped to s = 1/r.
QagResult integrate_profile(const GroundStateProfile& prof, bool potential) {
  static std::once_flag off;
  std::call_once(off, [] { gsl_set_error_handler_off(); });

  Integrand I{&prof, potential};
  gsl_function f{&eval_radial, &I};
  gsl_function ft{&eval_radial_inv, &I};

  std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(5000), &gsl_integration_workspace_free);

  // Both integrands decay like r^{-(N-1)} or faster; r_mid well past the
  // profile core, R_cut from the analytic power-law tail bound so the
  // ignored remainder is < 1e-12 of the integral.
  const double kappa = (prof.N() - prof.b()) * (prof.N() - 2.0);
  const double r_mid = 100.0 * std::pow(kappa, 1.0 / (2.0 - prof.b()));
  auto core = qag(&f, 0.0, r_mid, ws.get());

  const double m = (prof.N() - 2.0) / (2.0 - prof.b());
  const double decay = potential ? prof.N() - prof.b() : prof.N() - 2.0;
  const double coeff = potential ? std::pow(kappa, m * (prof.alpha() + 2.0)) / decay
                                 : (prof.N() - 2.0) * std::pow(kappa, 2.0 * m);
  double R_cut = r_mid;
  for (int it = 0; it < 200; ++it) {
    const double tail_bound = coeff * std::pow(R_cut, -decay);
    if (tail_bound < 1e-12 * std::abs(core.value)) break;
    R_cut *= 4.0;
  }
  QagResult tail{0.0, 0.0};
  if (R_cut > r_mid) tail = qag(&ft, 1.0 / R_cut, 1.0 / r_mid, ws.get());
  return {core.value + tail.value, core.abserr + tail.abserr};
}

}  // namespace

VariationalConstants compute_constants(int N, double b) {
  if (N < 3 || N > 5) throw dimension_error("compute_constants: N in {3,4,5} required");
  if (!(b > 0.0) || b > paper_b_ceiling(N) + 1e-12)
    throw parameter_error("compute_constants: 0 < b <= min{(6-N)/2, 4/N} required");

  GroundStateProfile prof(N, b);
  const double sig = sphere_area(N);
  const auto grad = integrate_profile(prof, false);
  const auto pot = integrate_profile(prof, true);

  VariationalConstants vc;
  vc.N = N;
  vc.b = b;
  vc.alpha = prof.alpha();
  vc.c = sig * grad.value;
  vc.P_W = sig * pot.value;
  vc.quadrature_error =
      std::max(grad.abserr / std::abs(grad.value), pot.abserr / std::abs(pot.value));
  if (vc.quadrature_error > 1e-9)
    throw quadrature_error("compute_constants: quadrature error estimate above 1e-9",
                           vc.quadrature_error);
  if (std::abs(vc.c - vc.P_W) > 1e-8 * vc.c)
    throw parameter_error("compute_constants: |grad W|^2 and P(W) quadratures disagree");
  vc.C1 = std::pow(vc.c, -0.5 * vc.alpha);
  vc.E_W = vc.alpha * vc.c / (2.0 * (vc.alpha + 2.0));
  return vc;
}

const VariationalConstants& shared_constants(int N, double b) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, std::unique_ptr<VariationalConstants>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(N, b);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<VariationalConstants>(compute_constants(N, b))).first;
  return *it->second;
}

double trapping_bound(double E0, const VariationalConstants& consts, double alpha) {
  if (E0 < 0.0) throw domain_error("trapping_bound: E0 >= 0 required");
  if (E0 > consts.E_W * (1.0 + 1e-12))
    throw domain_error("trapping_bound: E0 exceeds E(W) threshold");
  const double c = consts.c;
  const double cm = std::pow(c, -0.5 * alpha);
  auto F = [&](double y) { return 0.5 * y - cm * std::pow(y, 0.5 * (alpha + 2.0)) / (alpha + 2.0); };
  double lo = 0.0, hi = c;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = F(mid);
    if (std::abs(fm - E0) <= 1e-12) return mid;
    (fm < E0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double coercivity_gap(double delta0, double alpha) {
  if (delta0 < 0.0 || delta0 > 1.0) throw domain_error("coercivity_gap: delta0 in [0,1] required");
  return 1.0 - std::pow(1.0 - delta0, alpha);
}

SharpInequalityReport sharp_inequality_check(const FieldState& u, const SingularWeight& w,
                                             const VariationalConstants& consts) {
  SharpInequalityReport rep;
  const double K = gradient_sq_integral(u);
  if (K == 0.0) {
    rep.degenerate = true;
    return rep;
  }
  rep.P = weighted_potential_integral(u, w, consts.alpha);
  rep.bound = consts.C1 * std::pow(K, 0.5 * (consts.alpha + 2.0));
  rep.ratio = rep.P / rep.bound;
  return rep;
}

FieldState sample_ground_state(const GridSpec& g, const GroundStateProfile& prof,
                               double amplitude, double cut_start, double cut_end) {
  if (g.kind == GridKind::cartesian && prof.N() != g.dims)
    throw parameter_error("sample_ground_state: grid dims must match ambient N");
  if (g.kind == GridKind::radial && prof.N() != g.ambient_N)
    throw parameter_error("sample_ground_state: radial ambient N must match profile");
  FieldState u = make_field(g);
  const double r0 = cut_start * g.L, r1 = cut_end * g.L;
  auto cutoff = [&](double r) {
    if (r <= r0) return 1.0;
    if (r >= r1) return 0.0;
    const double s = (r - r0) / (r1 - r0);
    return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));  // quintic smoothstep
  };
  if (g.kind == GridKind::radial) {
    for (int j = 0; j < g.n; ++j) {
      const double r = g.coord(j);
      u.samples[j] = amplitude * prof.W(r) * cutoff(r);
    }
    return u;
  }
  const int n = g.n;
  int idx[3] = {0, 0, 0};
  std::size_t flat = 0;
  const std::size_t total = g.total_points();
  while (flat < total) {
    const double r = std::sqrt(g.radius_sq(idx));
    u.samples[flat] = amplitude * prof.W(r) * cutoff(r);
    ++flat;
    for (int d = g.dims - 1; d >= 0; --d) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
  }
  return u;
}

}  // namespace inls
