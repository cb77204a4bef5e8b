#include "inls/field.hpp"

#include <cmath>

namespace inls {

FieldState make_field(const GridSpec& g) {
  FieldState u;
  u.grid = g;
  u.samples.assign(g.total_points(), cplx(0.0, 0.0));
  return u;
}

bool has_nonfinite(const FieldState& u) {
  for (const auto& z : u.samples)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return true;
  return false;
}

double sphere_area(int N) {
  return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}

namespace {

// Accumulate f(i, measure_i) over the grid; measure is the quadrature
// weight of sample i (h^d cartesian, sigma_N r^{N-1} h radial).
template <class F>
double integrate(const GridSpec& g, F&& f) {
  double acc = 0.0;
  if (g.kind == GridKind::radial) {
    const double sig = sphere_area(g.ambient_N) * g.h();
    for (int j = 0; j < g.n; ++j)
      acc += f(static_cast<std::size_t>(j)) * sig * std::pow(g.coord(j), g.ambient_N - 1);
  } else {
    const double dv = g.cell_volume();
    const std::size_t total = g.total_points();
    for (std::size_t i = 0; i < total; ++i) acc += f(i) * dv;
  }
  return acc;
}

}  // namespace

SingularWeight make_singular_weight(const GridSpec& g, double b, double epsilon) {
  if (b < 0.0) throw parameter_error("singular weight: b >= 0 required");
  if (epsilon < 0.0) throw parameter_error("singular weight: epsilon >= 0 required");
  if (epsilon == 0.0 && g.kind == GridKind::cartesian && !g.offset)
    throw parameter_error("singular weight: epsilon = 0 requires the offset grid");
  SingularWeight w;
  w.grid = g;
  w.b = b;
  w.epsilon = epsilon;
  w.samples.resize(g.total_points());
  const double e2 = epsilon * epsilon;
  if (g.kind == GridKind::radial) {
    for (int j = 0; j < g.n; ++j) {
      const double r = g.coord(j);
      w.samples[j] = std::pow(r * r + e2, -0.5 * b);
    }
  } else {
    const int n = g.n;
    int idx[3] = {0, 0, 0};
    std::size_t flat = 0;
    const std::size_t total = g.total_points();
    while (flat < total) {
      w.samples[flat] = std::pow(g.radius_sq(idx) + e2, -0.5 * b);
      ++flat;
      for (int d = g.dims - 1; d >= 0; --d) {
        if (++idx[d] < n) break;
        idx[d] = 0;
      }
    }
  }
  return w;
}

double mass(const FieldState& u) {
  return integrate(u.grid, [&](std::size_t i) { return std::norm(u.samples[i]); });
}

double sup_abs(const FieldState& u) {
  double m = 0.0;
  for (const auto& z : u.samples) m = std::max(m, std::norm(z));
  return std::sqrt(m);
}

double lp_power_integral(const FieldState& u, double p) {
  if (!(p > 0.0)) throw parameter_error("lp_norm: p > 0 required");
  const double half_p = 0.5 * p;
  if (p == 2.0) return mass(u);
  return integrate(u.grid, [&](std::size_t i) { return std::pow(std::norm(u.samples[i]), half_p); });
}

double lp_norm(const FieldState& u, double p) {
  return std::pow(lp_power_integral(u, p), 1.0 / p);
}

namespace {

// Radial |u'|^2 by central differences: even mirror through the origin
// (offset grid), Dirichlet wall at r = L via antisymmetric ghost.
double radial_gradient_sq(const FieldState& u) {
  const GridSpec& g = u.grid;
  const int n = g.n;
  const double h = g.h();
  const double sig = sphere_area(g.ambient_N) * h;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx um = j > 0 ? u.samples[j - 1] : u.samples[0];
    const cplx up = j < n - 1 ? u.samples[j + 1] : -u.samples[n - 1];
    const cplx du = (up - um) / (2.0 * h);
    acc += std::norm(du) * sig * std::pow(g.coord(j), g.ambient_N - 1);
  }
  return acc;
}

}  // namespace

double gradient_sq_integral(const FieldState& u) {
  if (u.grid.kind == GridKind::radial) return radial_gradient_sq(u);
  return engine_for(u.grid).kinetic(u.samples);
}

double weighted_potential_integral(const FieldState& u, const SingularWeight& w, double alpha) {
  if (!(u.grid == w.grid)) throw parameter_error("potential integral: field/weight grid mismatch");
  const double q = 0.5 * (alpha + 2.0);
  if (alpha == 2.0) {
    return integrate(u.grid, [&](std::size_t i) {
      const double a2 = std::norm(u.samples[i]);
      return w.samples[i] * a2 * a2;
    });
  }
  return integrate(u.grid, [&](std::size_t i) {
    return w.samples[i] * std::pow(std::norm(u.samples[i]), q);
  });
}

EnergyParts energy_parts(const FieldState& u, const SingularWeight& w, const ModelParams& p) {
  EnergyParts e;
  e.kinetic = gradient_sq_integral(u);
  e.potential = weighted_potential_integral(u, w, p.alpha);
  e.energy = 0.5 * e.kinetic - p.mu * e.potential / (p.alpha + 2.0);
  return e;
}

double energy(const FieldState& u, const SingularWeight& w, const ModelParams& p) {
  return energy_parts(u, w, p).energy;
}

ScaledField scaling_transform(const FieldState& u, double lambda, const ModelParams& p) {
  if (!(lambda > 0.0)) throw parameter_error("scaling_transform: lambda > 0 required");
  if (u.grid.kind != GridKind::cartesian)
    throw parameter_error("scaling_transform: cartesian grid required");
  ScaledField out;
  if (lambda == 1.0) {
    out.field = u;
    return out;
  }
  auto& eng = engine_for(u.grid);
  out.field.grid = u.grid;
  out.field.time = lambda * lambda * u.time;
  out.field.samples = eng.resample_scaled(u.samples, lambda);
  const double amp = std::pow(lambda, (2.0 - p.b) / p.alpha);
  for (auto& z : out.field.samples) z *= amp;

  // Wrap/seam estimate: |u|^2 fraction outside the window that maps
  // cleanly under x -> lambda x.
  const GridSpec& g = u.grid;
  const double rho = 0.98 * g.L * std::min(lambda, 1.0 / lambda);
  double outer = 0.0, total = 0.0;
  const int n = g.n;
  int idx[3] = {0, 0, 0};
  std::size_t flat = 0;
  const std::size_t tp = g.total_points();
  while (flat < tp) {
    double linf = 0.0;
    for (int d = 0; d < g.dims; ++d) linf = std::max(linf, std::abs(g.coord(idx[d])));
    const double m = std::norm(u.samples[flat]);
    total += m;
    if (linf > rho) outer += m;
    ++flat;
    for (int d = g.dims - 1; d >= 0; --d) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
  }
  out.truncation_error = total > 0.0 ? outer / total : 0.0;
  out.truncated = out.truncation_error > 1e-8;
  return out;
}

}  // namespace inls
