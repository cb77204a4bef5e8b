#pragma once

#include <optional>
#include <string>
#include <variant>

#include "inls/evolve.hpp"
#include "inls/ground_state.hpp"

namespace inls {

// Sub/super-threshold position of an initial datum relative to the ground
// state constants. Boundary cases (either comparison within grid_tol
// relative) are flagged and excluded from dichotomy assertions.
struct ThresholdReport {
  double E0 = 0.0;
  double K0 = 0.0;  // |grad u0|^2
  double c = 0.0;
  double E_W = 0.0;
  bool subthreshold = false;    // E0 < E_W and K0 < c
  bool superthreshold = false;  // E0 < E_W and K0 >= c
  bool boundary = false;
  std::optional<double> y_star;  // trapping bound, present iff E0 <= E_W
  double delta_margin = 0.0;     // 1 - sqrt(K0/c)
};

ThresholdReport threshold_report(const FieldState& u0, const SingularWeight& w,
                                 const VariationalConstants& consts, const ModelParams& p,
                                 double grid_tol = 0.01);

struct MonitorResult {
  bool pass = false;
  std::vector<double> margin;  // per-checkpoint slack
  double tol = 0.0;
};

// Energy-trapping check: kinetic(t) <= y* + tol at every checkpoint, with
// tol = 10 x observed energy drift + 1% of y*. Requires a subthreshold report.
MonitorResult trapping_monitor(const Trajectory& traj, const ThresholdReport& rep);

// Kinetic stays >= c (1 - tol) up to the halt. Requires a superthreshold
// (or boundary) report.
MonitorResult blowup_monitor(const Trajectory& traj, const ThresholdReport& rep);

struct VerdictScattering {
  double snorm_final = 0.0;
  double proxy_tail = 0.0;
};
struct VerdictBlowUp {
  double t_estimate = 0.0;
};
struct VerdictGrowUp {
  double fitted_rate = 0.0;
};
struct VerdictUndetermined {
  std::string reason;
};
using RunVerdict = std::variant<VerdictScattering, VerdictBlowUp, VerdictGrowUp, VerdictUndetermined>;

std::string verdict_name(const RunVerdict& v);
std::string verdict_detail(const RunVerdict& v);

// Finite-horizon decision rule (defaults recorded in every run record):
//  - BlowUp when the run halted on a detector;
//  - Scattering when it reached t_end with bounded kinetic (max/min <
//    kinetic_ratio), snorm window increments decayed by >= snorm_decay from
//    their peak, and the proxy tail below proxy_tail_frac x initial Hdot1
//    norm;
//  - GrowUp when kinetic grew monotonically by >= growup_factor;
//  - Undetermined otherwise, with the failed condition spelled out.
struct ClassifyThresholds {
  double kinetic_ratio = 10.0;
  double snorm_decay = 10.0;
  double proxy_tail_frac = 0.05;
  double growup_factor = 4.0;
  int windows = 8;
  int min_checkpoints = 9;
};

RunVerdict classify_run(const Trajectory& traj, const ClassifyThresholds& th = {});

// Least-squares slope of log(sup) against log(T) plus the predicted rate
// exponent 2/(N alpha - 4).
struct RateFit {
  double fitted = 0.0;
  double predicted = 0.0;
};
RateFit growup_rate_fit(const std::vector<std::pair<double, double>>& sup_series, int N,
                        double alpha);

// Running sup of sqrt(kinetic) against horizon T, from a trajectory.
std::vector<std::pair<double, double>> running_sup_gradient(const Trajectory& traj);

}  // namespace inls
