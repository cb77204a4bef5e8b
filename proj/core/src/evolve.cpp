#include "inls/evolve.hpp"

#include <cmath>
#include <limits>

namespace inls {

const char* to_string(HaltStatus s) {
  switch (s) {
    case HaltStatus::completed: return "completed";
    case HaltStatus::blowup_cap: return "blowup-cap";
    case HaltStatus::blowup_overflow: return "blowup-overflow";
    case HaltStatus::blowup_dt_exhausted: return "blowup-suspected-dt-exhausted";
    case HaltStatus::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

bool is_blowup_halt(HaltStatus s) {
  return s == HaltStatus::blowup_cap || s == HaltStatus::blowup_overflow ||
         s == HaltStatus::blowup_dt_exhausted;
}

void EvolveConfig::validate() const {
  if (!(dt > 0.0)) throw parameter_error("evolve: dt > 0 required");
  if (t_end < 0.0) throw parameter_error("evolve: t_end >= 0 required");
  if (checkpoint_stride < 1) throw parameter_error("evolve: checkpoint_stride >= 1 required");
  if (dt_control && !(dt_growth_factor > 1.0))
    throw parameter_error("evolve: dt growth factor must exceed 1");
  if (sponge) {
    if (!(sponge->inner_fraction > 0.0) || !(sponge->inner_fraction < 1.0))
      throw parameter_error("evolve: sponge inner fraction must lie in (0,1)");
    if (sponge->strength < 0.0) throw parameter_error("evolve: sponge strength >= 0 required");
  }
}

namespace {

struct StepInfo {
  double kinetic_mid = 0.0;  // spectral (cartesian) / FD (radial) kinetic within the step
  double sup_abs = 0.0;      // after the step
};

// Phase rotation by tau * mu * w |u|^alpha; returns max |u| seen.
double nonlinear_phase_inplace(cvec& s, const std::vector<double>& w, double mu_alpha_sign,
                               double alpha, double tau) {
  const std::size_t n = s.size();
  double max2 = 0.0;
  const double f = mu_alpha_sign * tau;
  if (alpha == 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a2 = std::norm(s[i]);
      if (a2 > 1e100) throw blowup_overflow("nonlinear substep: |u|^alpha overflow");
      max2 = std::max(max2, a2);
      s[i] *= std::polar(1.0, f * w[i] * a2);
    }
  } else if (alpha == 1.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a2 = std::norm(s[i]);
      if (a2 > 1e100) throw blowup_overflow("nonlinear substep: |u|^alpha overflow");
      max2 = std::max(max2, a2);
      s[i] *= std::polar(1.0, f * w[i] * std::sqrt(a2));
    }
  } else {
    const double q = 0.5 * alpha;
    for (std::size_t i = 0; i < n; ++i) {
      const double a2 = std::norm(s[i]);
      if (a2 > 1e100) throw blowup_overflow("nonlinear substep: |u|^alpha overflow");
      max2 = std::max(max2, a2);
      if (a2 > 0.0) s[i] *= std::polar(1.0, f * w[i] * std::pow(a2, q));
    }
  }
  return std::sqrt(max2);
}

// ---- radial Crank-Nicolson ----------------------------------------------

// (I - i tau/2 Lap_r) u+ = (I + i tau/2 Lap_r) u with the flux-form radial
// Laplacian (self-adjoint w.r.t. the r^{N-1} measure, hence unitary CN):
//   (Lap u)_j = [rho_{j+1/2}(u_{j+1}-u_j) - rho_{j-1/2}(u_j-u_{j-1})] / (rho_j h^2),
// rho = r^{N-1}; natural condition at r=0 (face weight 0), Dirichlet wall at
// r=L via the antisymmetric ghost u_n = -u_{n-1}.
void radial_cn_inplace(FieldState& u, double tau) {
  const GridSpec& g = u.grid;
  const int n = g.n, N = g.ambient_N;
  const double h = g.h();
  const cplx z(0.0, 0.5 * tau);
  static thread_local std::vector<cplx> dl, du, dc, rhs, work;
  dl.assign(n, 0.0);
  du.assign(n, 0.0);
  dc.assign(n, 0.0);
  rhs.assign(n, 0.0);
  work.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double rho_j = std::pow(g.coord(j), N - 1);
    const double rho_p = std::pow(h * (j + 1), N - 1);
    const double rho_m = j > 0 ? std::pow(h * j, N - 1) : 0.0;
    const double inv = 1.0 / (rho_j * h * h);
    double lower = rho_m * inv, upper = rho_p * inv;
    double diag = -(rho_p + rho_m) * inv;
    if (j == n - 1) {
      diag -= upper;  // ghost u_n = -u_{n-1}
      upper = 0.0;
    }
    // rows of (I -+ z Lap)
    dl[j] = -z * lower;
    du[j] = -z * upper;
    dc[j] = 1.0 - z * diag;
    const cplx um = j > 0 ? u.samples[j - 1] : 0.0;
    const cplx up = j < n - 1 ? u.samples[j + 1] : 0.0;
    rhs[j] = u.samples[j] + z * (lower * um + diag * u.samples[j] + upper * up);
  }
  // Thomas solve
  work[0] = du[0] / dc[0];
  rhs[0] = rhs[0] / dc[0];
  for (int j = 1; j < n; ++j) {
    const cplx m = dc[j] - dl[j] * work[j - 1];
    work[j] = du[j] / m;
    rhs[j] = (rhs[j] - dl[j] * rhs[j - 1]) / m;
  }
  for (int j = n - 2; j >= 0; --j) rhs[j] -= work[j] * rhs[j + 1];
  u.samples = rhs;
  u.time += tau;
}

double radial_kinetic(const FieldState& u) { return gradient_sq_integral(u); }

StepInfo strang_inplace_radial(FieldState& u, const SingularWeight& w, const ModelParams& p,
                               double tau) {
  nonlinear_phase_inplace(u.samples, w.samples, static_cast<double>(p.mu), p.alpha, 0.5 * tau);
  radial_cn_inplace(u, tau);
  StepInfo info;
  info.sup_abs = nonlinear_phase_inplace(u.samples, w.samples, static_cast<double>(p.mu), p.alpha,
                                         0.5 * tau);
  info.kinetic_mid = radial_kinetic(u);
  return info;
}

StepInfo strang_inplace_cartesian(FieldState& u, const SingularWeight& w, const ModelParams& p,
                                  double tau, bool dealias) {
  auto& eng = engine_for(u.grid);
  if (dealias) eng.dealias(u.samples);
  nonlinear_phase_inplace(u.samples, w.samples, static_cast<double>(p.mu), p.alpha, 0.5 * tau);
  StepInfo info;
  info.kinetic_mid = eng.free_propagate(u.samples, tau, true);
  if (dealias) eng.dealias(u.samples);
  info.sup_abs = nonlinear_phase_inplace(u.samples, w.samples, static_cast<double>(p.mu), p.alpha,
                                         0.5 * tau);
  u.time += tau;
  return info;
}

void sponge_inplace(FieldState& u, const SpongeParams& sp, double dt) {
  const GridSpec& g = u.grid;
  const double r_in = sp.inner_fraction * g.L;
  const double span = g.L - r_in;
  const double depth = sp.strength * dt;
  if (depth <= 0.0) return;
  if (depth > 1.0) throw parameter_error("sponge: strength*dt must not exceed 1");
  const std::size_t total = g.total_points();
  int idx[3] = {0, 0, 0};
  for (std::size_t i = 0; i < total; ++i) {
    const double r = u.grid.kind == GridKind::radial ? g.coord(static_cast<int>(i))
                                                     : std::sqrt(g.radius_sq(idx));
    if (r > r_in) {
      double s = (r - r_in) / span;
      if (s > 1.0) s = 1.0;
      const double ramp = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
      u.samples[i] *= 1.0 - depth * ramp;
    }
    if (u.grid.kind == GridKind::cartesian) {
      for (int d = g.dims - 1; d >= 0; --d) {
        if (++idx[d] < g.n) break;
        idx[d] = 0;
      }
    }
  }
}

// Shared evolution driver; the stepper closure hides the grid kind. The
// proxy tracker receives the tau sequence so the radial pullback can replay
// the exact forward partition.
template <class Stepper, class ProxyTracker>
Trajectory run_evolution(const FieldState& u0, const SingularWeight& w, const ModelParams& p,
                         const EvolveConfig& cfg, const DiagnosticsPlan& plan,
                         const CheckpointSink& sink, Stepper&& step, ProxyTracker&& proxy_of) {
  cfg.validate();
  if (!(u0.grid == w.grid)) throw parameter_error("evolve: field/weight grid mismatch");

  Trajectory traj;
  FieldState u = u0;
  traj.K0 = gradient_sq_integral(u0);
  const double cap_K = traj.K0 > 0.0 ? cfg.kinetic_cap_factor * traj.K0
                                     : std::numeric_limits<double>::infinity();

  double snorm_cum = 0.0;
  double prev_integrand = snorm_integrand(u, p.N);
  double prev_t = u.time;
  std::vector<double> taus;

  auto checkpoint = [&](const FieldState& state) {
    DiagnosticsSample s = instantaneous_diagnostics(state, plan);
    const double integrand = snorm_integrand(state, p.N);
    snorm_cum += 0.5 * (integrand + prev_integrand) * (state.time - prev_t);
    prev_integrand = integrand;
    prev_t = state.time;
    s.snorm_cum = snorm_cum;
    s.proxy = plan.proxy ? proxy_of(state, taus) : 0.0;
    traj.samples.push_back(s);
    if (sink) sink(s, state);
  };

  checkpoint(u);

  double dt = cfg.dt;
  double K_prev = traj.K0;
  const double t_end = u0.time + cfg.t_end;
  int steps_since_checkpoint = 0;
  bool halted = false;

  while (!halted && u.time < t_end - 1e-14 * std::max(1.0, t_end)) {
    const double tau = std::min(dt, t_end - u.time);
    StepInfo info;
    bool overflowed = false;
    try {
      info = step(u, tau);
    } catch (const blowup_overflow&) {
      traj.status = HaltStatus::blowup_overflow;
      halted = true;
      overflowed = true;
    }
    taus.push_back(tau);
    ++steps_since_checkpoint;
    if (!overflowed) {
      if (cfg.sponge) sponge_inplace(u, *cfg.sponge, tau);
      if (!std::isfinite(info.kinetic_mid) || !std::isfinite(info.sup_abs)) {
        traj.status = HaltStatus::numerical_failure;
        halted = true;
      } else if (info.sup_abs >= cfg.amplitude_cap || info.kinetic_mid >= cap_K) {
        traj.status = HaltStatus::blowup_cap;
        halted = true;
      } else if (cfg.dt_control && K_prev > 0.0 &&
                 info.kinetic_mid >= cfg.dt_growth_factor * K_prev) {
        if (++traj.halvings > cfg.max_halvings) {
          traj.status = HaltStatus::blowup_dt_exhausted;
          halted = true;
        } else {
          dt *= 0.5;
        }
      }
      K_prev = info.kinetic_mid;
    }

    if (halted || steps_since_checkpoint >= cfg.checkpoint_stride ||
        u.time >= t_end - 1e-14 * std::max(1.0, t_end)) {
      checkpoint(u);
      steps_since_checkpoint = 0;
    }
  }
  if (steps_since_checkpoint > 0) checkpoint(u);
  traj.halt_time = u.time;
  traj.final_state = std::move(u);
  return traj;
}

}  // namespace

FieldState linear_substep(const FieldState& u, double tau) {
  FieldState out = u;
  if (u.grid.kind == GridKind::radial) {
    radial_cn_inplace(out, tau);
  } else {
    engine_for(u.grid).free_propagate(out.samples, tau);
    out.time += tau;
  }
  return out;
}

FieldState nonlinear_substep(const FieldState& u, const SingularWeight& w, const ModelParams& p,
                             double tau) {
  if (!(u.grid == w.grid)) throw parameter_error("nonlinear_substep: grid mismatch");
  FieldState out = u;
  nonlinear_phase_inplace(out.samples, w.samples, static_cast<double>(p.mu), p.alpha, tau);
  return out;
}

FieldState strang_step(const FieldState& u, const SingularWeight& w, const ModelParams& p,
                       double dt, bool dealias) {
  if (!(u.grid == w.grid)) throw parameter_error("strang_step: grid mismatch");
  FieldState out = u;
  if (u.grid.kind == GridKind::radial)
    strang_inplace_radial(out, w, p, dt);
  else
    strang_inplace_cartesian(out, w, p, dt, dealias);
  return out;
}

FieldState apply_sponge(const FieldState& u, const SpongeParams& sp, double dt) {
  if (!(sp.inner_fraction > 0.0) || !(sp.inner_fraction < 1.0))
    throw parameter_error("sponge: inner fraction must lie in (0,1)");
  FieldState out = u;
  sponge_inplace(out, sp, dt);
  return out;
}

Trajectory evolve(const FieldState& u0, const SingularWeight& w, const ModelParams& p,
                  const EvolveConfig& cfg, const DiagnosticsPlan& plan,
                  const CheckpointSink& sink) {
  if (u0.grid.kind != GridKind::cartesian)
    throw parameter_error("evolve: cartesian grid required (use radial_evolve)");
  auto& eng = engine_for(u0.grid);
  cvec prev_spec, cur_spec;
  bool have_prev = false;
  auto proxy_of = [&](const FieldState& s, const std::vector<double>&) {
    eng.pullback_spectrum(s.samples, s.time, cur_spec);
    double v = 0.0;
    if (have_prev) v = eng.hdot1_of_spectrum_diff(cur_spec, prev_spec);
    std::swap(prev_spec, cur_spec);
    have_prev = true;
    return v;
  };
  auto step = [&](FieldState& u, double tau) {
    return strang_inplace_cartesian(u, w, p, tau, cfg.dealias);
  };
  return run_evolution(u0, w, p, cfg, plan, sink, step, proxy_of);
}

Trajectory radial_evolve(const FieldState& u0, const SingularWeight& w, const ModelParams& p,
                         const EvolveConfig& cfg, const DiagnosticsPlan& plan,
                         const CheckpointSink& sink) {
  if (u0.grid.kind != GridKind::radial)
    throw parameter_error("radial_evolve: radial grid required");
  // Pullback by replaying the tau partition of the forward run with
  // negative steps: the Crank-Nicolson flow is a Cayley transform, so this
  // inverts the discrete linear flow exactly.
  FieldState prev;
  bool have_prev = false;
  auto proxy_of = [&](const FieldState& s, const std::vector<double>& taus) {
    FieldState back = s;
    for (auto it = taus.rbegin(); it != taus.rend(); ++it) radial_cn_inplace(back, -*it);
    double v = 0.0;
    if (have_prev) {
      FieldState diff = back;
      for (std::size_t i = 0; i < diff.samples.size(); ++i) diff.samples[i] -= prev.samples[i];
      v = std::sqrt(gradient_sq_integral(diff));
    }
    prev = std::move(back);
    have_prev = true;
    return v;
  };
  auto step = [&](FieldState& u, double tau) { return strang_inplace_radial(u, w, p, tau); };
  return run_evolution(u0, w, p, cfg, plan, sink, step, proxy_of);
}

}  // namespace inls
