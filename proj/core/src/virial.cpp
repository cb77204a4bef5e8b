#include "inls/virial.hpp"

#include <cmath>

namespace inls {

namespace {

// Quintic-Hermite descent of a' for the plateau weight, in s = (r-R)/R:
// a'(R+sR) = R (2 + 2s - 32 s^3 + 46 s^4 - 18 s^5), matching a' = 2r, a'' = 2
// at r = R and a' = a'' = a''' = 0 at r = 2R. Its integral gives the plateau
// constant a(2R) = 2.2 R^2.
struct PlateauProfile {
  double R;
  double s(double r) const { return (r - R) / R; }
  double a(double r) const {
    if (r <= R) return r * r;
    if (r >= 2.0 * R) return 2.2 * R * R;
    const double t = s(r);
    // R^2 * (1 + int_0^s f)
    const double F = 2.0 * t + t * t - 8.0 * std::pow(t, 4) + 9.2 * std::pow(t, 5) -
                     3.0 * std::pow(t, 6);
    return R * R * (1.0 + F);
  }
  double da(double r) const {
    if (r <= R) return 2.0 * r;
    if (r >= 2.0 * R) return 0.0;
    const double t = s(r);
    return R * (2.0 + 2.0 * t - 32.0 * t * t * t + 46.0 * std::pow(t, 4) - 18.0 * std::pow(t, 5));
  }
  double d2a(double r) const {
    if (r <= R) return 2.0;
    if (r >= 2.0 * R) return 0.0;
    const double t = s(r);
    return 2.0 - 96.0 * t * t + 184.0 * t * t * t - 90.0 * std::pow(t, 4);
  }
  double d3a(double r) const {
    if (r <= R || r >= 2.0 * R) return 0.0;
    const double t = s(r);
    return (-192.0 * t + 552.0 * t * t - 360.0 * t * t * t) / R;
  }
  double d4a(double r) const {
    if (r <= R || r >= 2.0 * R) return 0.0;
    const double t = s(r);
    return (-192.0 + 1104.0 * t - 1080.0 * t * t) / (R * R);
  }
};

// phi' on [1,10] is the cubic Hermite with phi'(1) = 1, phi'(10) = 0,
// phi''(10) = 0 and phi''(1+) = -20/27, which makes int phi' = -1/2 so that
// phi(10) = 0. In tau = (rho-1)/9:
//   phi'(rho) = -(14/3) tau^3 + (31/3) tau^2 - (20/3) tau + 1,
// whose maximum slope keeps phi'' <= 1 everywhere (verified at
// construction).
struct BumpProfile {
  double R;
  double tau(double rho) const { return (rho - 1.0) / 9.0; }
  double phi(double rho) const {
    if (rho <= 1.0) return 0.5 * rho * rho;
    if (rho >= 10.0) return 0.0;
    const double t = tau(rho);
    return 0.5 - 10.5 * std::pow(t, 4) + 31.0 * t * t * t - 30.0 * t * t + 9.0 * t;
  }
  double dphi(double rho) const {
    if (rho <= 1.0) return rho;
    if (rho >= 10.0) return 0.0;
    const double t = tau(rho);
    return -(14.0 / 3.0) * t * t * t + (31.0 / 3.0) * t * t - (20.0 / 3.0) * t + 1.0;
  }
  double d2phi(double rho) const {
    if (rho <= 1.0) return 1.0;
    if (rho >= 10.0) return 0.0;
    const double t = tau(rho);
    return (-14.0 * t * t + (62.0 / 3.0) * t - 20.0 / 3.0) / 9.0;
  }
  double d3phi(double rho) const {
    if (rho <= 1.0 || rho >= 10.0) return 0.0;
    const double t = tau(rho);
    return (-28.0 * t + 62.0 / 3.0) / 81.0;
  }
  double d4phi(double rho) const {
    if (rho <= 1.0 || rho >= 10.0) return 0.0;
    return -28.0 / 729.0;
  }
  // a(r) = R^2 phi(r/R)
  double a(double r) const { return R * R * phi(r / R); }
  double da(double r) const { return R * dphi(r / R); }
  double d2a(double r) const { return d2phi(r / R); }
  double d3a(double r) const { return d3phi(r / R) / R; }
  double d4a(double r) const { return d4phi(r / R) / (R * R); }
};

template <class P>
void sample_weight(VirialWeight& w, const P& prof) {
  const GridSpec& g = w.grid;
  const int N = g.dims;
  const std::size_t total = g.total_points();
  w.a.resize(total);
  w.grad_coef.resize(total);
  w.hess_aniso.resize(total);
  w.lap_a.resize(total);
  w.bilap_a.resize(total);
  w.x_dot_grad_a.resize(total);
  int idx[3] = {0, 0, 0};
  std::size_t flat = 0;
  while (flat < total) {
    const double r2 = g.radius_sq(idx);
    const double r = std::sqrt(r2);
    const double a1 = prof.da(r), a2 = prof.d2a(r), a3 = prof.d3a(r), a4 = prof.d4a(r);
    w.a[flat] = prof.a(r);
    w.grad_coef[flat] = a1 / r;
    w.hess_aniso[flat] = (a2 - a1 / r) / r2;
    w.lap_a[flat] = a2 + (N - 1) * a1 / r;
    // LapLap a = a'''' + (N-1) a'''/r + (N-1)[(N-3) a''/r^2 - (N-3) a'/r^3]
    // assembled from g = Lap a: g'' + (N-1) g'/r with
    // g' = a''' + (N-1)(a''/r - a'/r^2), g'' = a'''' + (N-1)(a'''/r - 2a''/r^2 + 2a'/r^3).
    const double gp = a3 + (N - 1) * (a2 / r - a1 / r2);
    const double gpp = a4 + (N - 1) * (a3 / r - 2.0 * a2 / r2 + 2.0 * a1 / (r2 * r));
    w.bilap_a[flat] = gpp + (N - 1) * gp / r;
    w.x_dot_grad_a[flat] = r * a1;
    ++flat;
    for (int d = g.dims - 1; d >= 0; --d) {
      if (++idx[d] < g.n) break;
      idx[d] = 0;
    }
  }
  w.profile[0] = [prof](double r) { return prof.a(r); };
  w.profile[1] = [prof](double r) { return prof.da(r); };
  w.profile[2] = [prof](double r) { return prof.d2a(r); };
  w.profile[3] = [prof](double r) { return prof.d3a(r); };
  w.profile[4] = [prof](double r) { return prof.d4a(r); };
}

}  // namespace

VirialWeight make_quadratic_weight(double R, const GridSpec& g) {
  if (g.kind != GridKind::cartesian) throw parameter_error("virial weight: cartesian grid required");
  if (!(R > 0.0)) throw parameter_error("virial weight: R > 0 required");
  if (!(2.0 * R < g.L)) throw parameter_error("virial weight: 2R must lie strictly inside the box");
  VirialWeight w;
  w.kind = VirialWeightKind::quadratic_plateau;
  w.R = R;
  w.grid = g;
  sample_weight(w, PlateauProfile{R});
  return w;
}

VirialWeight make_bump_weight(double R, const GridSpec& g) {
  if (g.kind != GridKind::cartesian) throw parameter_error("virial weight: cartesian grid required");
  if (!(R > 0.0)) throw parameter_error("virial weight: R > 0 required");
  if (!(10.0 * R < g.L)) throw parameter_error("virial weight: 10R must lie strictly inside the box");
  VirialWeight w;
  w.kind = VirialWeightKind::compact_bump;
  w.R = R;
  w.grid = g;
  BumpProfile prof{R};
  // phi'' <= 1 is a construction invariant; verify on a dense grid.
  for (int i = 0; i <= 20000; ++i) {
    const double rho = 10.0 * i / 20000.0;
    if (prof.d2phi(rho) > 1.0 + 1e-10)
      throw parameter_error("bump weight: phi'' bound violated at construction");
  }
  sample_weight(w, prof);
  return w;
}

double virial_Ma(const FieldState& u, const VirialWeight& w) {
  if (!(u.grid == w.grid)) throw parameter_error("virial_Ma: grid mismatch");
  auto& eng = engine_for(u.grid);
  std::array<cvec, 3> grad;
  eng.gradients(u.samples, grad);
  const GridSpec& g = u.grid;
  const double dv = g.cell_volume();
  double acc = 0.0;
  int idx[3] = {0, 0, 0};
  const std::size_t total = g.total_points();
  for (std::size_t i = 0; i < total; ++i) {
    cplx xg = 0.0;
    for (int d = 0; d < g.dims; ++d) xg += g.coord(idx[d]) * grad[d][i];
    acc += std::imag(std::conj(u.samples[i]) * xg) * w.grad_coef[i];
    for (int d = g.dims - 1; d >= 0; --d) {
      if (++idx[d] < g.n) break;
      idx[d] = 0;
    }
  }
  return 2.0 * acc * dv;
}

double virial_rhs(const FieldState& u, const VirialWeight& w, const SingularWeight& sw,
                  const ModelParams& p) {
  if (!(u.grid == w.grid) || !(u.grid == sw.grid)) throw parameter_error("virial_rhs: grid mismatch");
  auto& eng = engine_for(u.grid);
  std::array<cvec, 3> grad;
  eng.gradients(u.samples, grad);
  const GridSpec& g = u.grid;
  const double dv = g.cell_volume();
  const double ap2 = p.alpha + 2.0;
  const double c_lap = p.mu * (2.0 - 4.0 / ap2);
  const double c_xg = p.mu * 4.0 * p.b / ap2;
  const double e2 = sw.epsilon * sw.epsilon;
  const double q = 0.5 * ap2;
  double acc = 0.0;
  int idx[3] = {0, 0, 0};
  const std::size_t total = g.total_points();
  for (std::size_t i = 0; i < total; ++i) {
    double g2 = 0.0;
    cplx xg = 0.0;
    for (int d = 0; d < g.dims; ++d) {
      g2 += std::norm(grad[d][i]);
      xg += g.coord(idx[d]) * grad[d][i];
    }
    const double a2 = std::norm(u.samples[i]);
    const double up = p.alpha == 2.0 ? a2 * a2 : std::pow(a2, q);
    const double r2 = g.radius_sq(idx);
    const double w_b2 = std::pow(r2 + e2, -0.5 * (sw.b + 2.0));
    acc += 4.0 * (w.grad_coef[i] * g2 + w.hess_aniso[i] * std::norm(xg));
    acc -= a2 * w.bilap_a[i];
    acc -= c_lap * sw.samples[i] * up * w.lap_a[i];
    acc -= c_xg * w_b2 * up * w.x_dot_grad_a[i];
    for (int d = g.dims - 1; d >= 0; --d) {
      if (++idx[d] < g.n) break;
      idx[d] = 0;
    }
  }
  return acc * dv;
}

double virial_VR(const FieldState& u, const VirialWeight& w) {
  if (!(u.grid == w.grid)) throw parameter_error("virial_VR: grid mismatch");
  const double dv = u.grid.cell_volume();
  double acc = 0.0;
  const std::size_t total = u.grid.total_points();
  for (std::size_t i = 0; i < total; ++i) acc += w.a[i] * std::norm(u.samples[i]);
  return acc * dv;
}

}  // namespace inls
