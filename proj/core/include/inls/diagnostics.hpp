#pragma once

#include <optional>
#include <vector>

#include "inls/virial.hpp"

namespace inls {

// One checkpoint row. The CSV column order is fixed:
// t,mass,kinetic,potential,energy,Ma,virial_rhs,VR,snorm_cum,sup_abs,proxy
struct DiagnosticsSample {
  double t = 0.0;
  double mass = 0.0;
  double kinetic = 0.0;    // |grad u|^2
  double potential = 0.0;  // P(u)
  double energy = 0.0;
  double Ma = 0.0;
  double virial_rhs = 0.0;
  double VR = 0.0;
  double snorm_cum = 0.0;  // cumulative int int |u|^{2(N+2)/(N-2)} dx dt
  double sup_abs = 0.0;
  double proxy = 0.0;      // Hdot1 Cauchy increment of e^{-itD}u since previous checkpoint
};

struct DiagnosticsPlan {
  const SingularWeight* weight = nullptr;
  const ModelParams* params = nullptr;
  const VirialWeight* virial = nullptr;  // optional
  bool proxy = true;
};

// Everything computable from a single snapshot (snorm_cum and proxy stay 0;
// the evolution loop owns those accumulations).
DiagnosticsSample instantaneous_diagnostics(const FieldState& u, const DiagnosticsPlan& plan);

// S-norm integrand int |u|^{2(N+2)/(N-2)} dx; 0 when N <= 2 (undefined).
double snorm_integrand(const FieldState& u, int N);

// || e^{-i t2 D} u(t2) - e^{-i t1 D} u(t1) ||_{Hdot1}, the Cauchy increment
// of the interaction representation. Exact pullback on cartesian grids.
double scattering_proxy(const FieldState& u1, const FieldState& u2);

// V_R(t_i), the centered second difference, and the reported upper bound
// 4(kinetic - P) + C R^{-b} kinetic^{N alpha/4} + C R^{-2} with C calibrated
// as the smallest constant covering every interior checkpoint.
struct VRSeries {
  std::vector<double> t, VR, d2VR, bound;
  double C_calibrated = 0.0;
};
VRSeries v_r_series(const std::vector<DiagnosticsSample>& samples, const VirialWeight& w,
                    const ModelParams& p);

// Per-window increments of a cumulative series over nwindows equal time slices.
std::vector<double> window_increments(const std::vector<DiagnosticsSample>& samples,
                                      int nwindows);

// Gagliardo-Nirenberg functional: lhs = |u|_{L^{alpha+2}}^{alpha+2},
// rhs_shape = |u|_{L^2}^{(N+2-(N-2)(alpha+1))/2} |grad u|^{N alpha/2}.
struct GNFunctional {
  double lhs = 0.0;
  double rhs_shape = 0.0;
  bool degenerate = false;
  double ratio() const { return lhs / rhs_shape; }
};
GNFunctional gn_functional(const FieldState& u, int N, double alpha);

}  // namespace inls
