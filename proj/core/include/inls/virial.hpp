#pragma once

#include <functional>
#include <vector>

#include "inls/field.hpp"

namespace inls {

enum class VirialWeightKind { quadratic_plateau, compact_bump };

// Localized virial weight a(x), radial by construction, with every
// derivative field sampled from the symbolic radial profile (never by
// differencing samples).
//
// quadratic_plateau: a = |x|^2 for |x| <= R, constant for |x| >= 2R, with a
//   quintic-Hermite descent of a' on [R, 2R] (a'' <= 2 and |d^m a| <~
//   R^{2-m} on the annulus by construction).
// compact_bump: a = R^2 phi(|x|/R) with phi = rho^2/2 on [0,1], 0 beyond 10,
//   phi' a cubic Hermite on [1,10] whose end slopes force phi(10) = 0 and
//   phi'' <= 1.
struct VirialWeight {
  VirialWeightKind kind = VirialWeightKind::quadratic_plateau;
  double R = 0.0;
  GridSpec grid;

  // sampled fields on the grid
  std::vector<double> a;              // a(x)
  std::vector<double> grad_coef;      // a'(r)/r, so a_j = grad_coef * x_j
  std::vector<double> hess_aniso;     // (a'' - a'/r)/r^2 for the a_jk contraction
  std::vector<double> lap_a;          // a_jj
  std::vector<double> bilap_a;        // a_jjkk
  std::vector<double> x_dot_grad_a;   // x_j a_j = r a'(r)

  // symbolic radial profile and derivatives (for invariant checks)
  std::function<double(double)> profile[5];  // a, a', a'', a''', a''''
};

// 2R (resp. 10R) must lie strictly inside the box.
VirialWeight make_quadratic_weight(double R, const GridSpec& g);
VirialWeight make_bump_weight(double R, const GridSpec& g);

// M_a(t) = 2 Im int conj(u) grad(u) . grad(a) dx.
double virial_Ma(const FieldState& u, const VirialWeight& w);

// The four-term virial derivative
//   int 4 Re a_jk conj(u_j) u_k - |u|^2 a_jjkk
//       - mu (2 - 4/(alpha+2)) |x|^{-b} |u|^{alpha+2} a_jj
//       - mu (4b/(alpha+2)) |x|^{-b-2} |u|^{alpha+2} x_j a_j  dx,
// which for focusing data supported in {a = |x|^2} collapses to
// 8 (kinetic - P).
double virial_rhs(const FieldState& u, const VirialWeight& w, const SingularWeight& sw,
                  const ModelParams& p);

// V_R(t) = int a(x) |u|^2 dx.
double virial_VR(const FieldState& u, const VirialWeight& w);

}  // namespace inls
