#pragma once

#include <functional>
#include <optional>

#include "inls/diagnostics.hpp"

namespace inls {

enum class HaltStatus {
  completed,
  blowup_cap,           // gradient/amplitude detector cap reached
  blowup_overflow,      // |u|^alpha overflowed inside a substep
  blowup_dt_exhausted,  // dt halved max_halvings times (blow-up suspected)
  numerical_failure,    // NaN/Inf detected
};
const char* to_string(HaltStatus s);
bool is_blowup_halt(HaltStatus s);

struct SpongeParams {
  double inner_fraction = 0.7;  // mask is 1 inside inner_fraction * L
  double strength = 1.0;        // boundary damping (1 - strength*dt) per step
};

struct EvolveConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int checkpoint_stride = 10;
  bool dt_control = false;          // halve dt when kinetic grows by >= gamma per step
  double dt_growth_factor = 1.5;    // gamma
  int max_halvings = 20;
  std::optional<SpongeParams> sponge;
  bool dealias = false;             // 2/3-rule truncation before nonlinear substeps
  double kinetic_cap_factor = 1e3;  // halt when |grad u|^2 >= factor * initial
  double amplitude_cap = 1e8;       // halt when sup|u| >= cap

  void validate() const;
};

struct Trajectory {
  std::vector<DiagnosticsSample> samples;
  HaltStatus status = HaltStatus::completed;
  double halt_time = 0.0;
  int halvings = 0;
  double K0 = 0.0;  // kinetic of the initial state
  FieldState final_state;
};

using CheckpointSink = std::function<void(const DiagnosticsSample&, const FieldState&)>;

// u_hat <- e^{-i|k|^2 tau} u_hat (cartesian) or one Crank-Nicolson step of
// the radial Laplacian (radial); the exact/unitary free flow.
FieldState linear_substep(const FieldState& u, double tau);

// u <- u exp(i mu w |u|^alpha tau); modulus preserved pointwise.
FieldState nonlinear_substep(const FieldState& u, const SingularWeight& w, const ModelParams& p,
                             double tau);

// Symmetric composition: half nonlinear, full linear, half nonlinear.
FieldState strang_step(const FieldState& u, const SingularWeight& w, const ModelParams& p,
                       double dt, bool dealias = false);

// Smooth radial mask, 1 inside inner_fraction*L, (1 - strength*dt) at the
// boundary; never increases mass.
FieldState apply_sponge(const FieldState& u, const SpongeParams& sp, double dt);

Trajectory evolve(const FieldState& u0, const SingularWeight& w, const ModelParams& p,
                  const EvolveConfig& cfg, const DiagnosticsPlan& plan,
                  const CheckpointSink& sink = {});

// Same contract on a radial grid (ambient N from the grid); linear part by
// Crank-Nicolson with the mirror condition at r = 0 and u(L) = 0.
Trajectory radial_evolve(const FieldState& u0, const SingularWeight& w, const ModelParams& p,
                         const EvolveConfig& cfg, const DiagnosticsPlan& plan,
                         const CheckpointSink& sink = {});

}  // namespace inls
