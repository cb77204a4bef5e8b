#pragma once

#include "inls/field.hpp"
#include "inls/model.hpp"

namespace inls {

// Closed-form ground state W(r) = (1 + r^{2-b}/kappa)^{-m} with
// kappa = (N-b)(N-2), m = (N-2)/(2-b); solves Lap W + |x|^{-b} W^{alpha+1} = 0
// at the critical alpha. Derivatives are symbolic (chain rule), never
// finite differences.
class GroundStateProfile {
 public:
  GroundStateProfile(int N, double b);

  int N() const { return N_; }
  double b() const { return b_; }
  double alpha() const { return alpha_; }

  double W(double r) const;
  double dW(double r) const;
  double d2W(double r) const;
  // W'' + (N-1) W'/r
  double laplacian(double r) const;
  // Lap W + r^{-b} W^{alpha+1}; ~0 up to rounding
  double elliptic_residual(double r) const;

 private:
  int N_;
  double b_, alpha_, kappa_, m_;
};

// c = |grad W|_{L2}^2, C1 = c^{-alpha/2}, E_W = alpha c / (2(alpha+2)).
struct VariationalConstants {
  int N = 0;
  double b = 0.0;
  double alpha = 0.0;
  double c = 0.0;
  double C1 = 0.0;
  double E_W = 0.0;
  double quadrature_error = 0.0;  // max relative error estimate of the two quadratures
  double P_W = 0.0;               // independent quadrature of || |x|^{-b} W^{alpha+2} ||_L1
};

// Adaptive quadrature of the two radial integrals; requires N in {3,4,5}
// and 0 < b <= paper_b_ceiling(N). Throws quadrature_error when the error
// estimate exceeds 1e-9, parameter_error when the two integrals disagree.
VariationalConstants compute_constants(int N, double b);

// Process-wide (N, b) cache; computed once, shared read-only.
const VariationalConstants& shared_constants(int N, double b);

// Unique root y* in [0, c] of F(y) = y/2 - c^{-alpha/2} y^{(alpha+2)/2}/(alpha+2) = E0,
// located by bisection to |F(y*) - E0| <= 1e-12.
double trapping_bound(double E0, const VariationalConstants& consts, double alpha);

// delta = 1 - (1 - delta0)^alpha, the coercivity coefficient guaranteed when
// sup |grad u| <= (1 - delta0) |grad W|.
double coercivity_gap(double delta0, double alpha);

struct SharpInequalityReport {
  double P = 0.0;      // || |x|^{-b} |u|^{alpha+2} ||_L1 on the grid
  double bound = 0.0;  // C1 |grad u|^{alpha+2}
  double ratio = 0.0;  // P / bound; <= 1 + grid tolerance, -> 1 at u = W
  bool degenerate = false;
};
SharpInequalityReport sharp_inequality_check(const FieldState& u, const SingularWeight& w,
                                             const VariationalConstants& consts);

// Sample A * W(|x|) * cutoff on a cartesian grid; the smooth cutoff is 1
// inside cut_start*L and 0 beyond cut_end*L (W decays too slowly for a
// periodic box otherwise).
FieldState sample_ground_state(const GridSpec& g, const GroundStateProfile& prof,
                               double amplitude, double cut_start = 0.6, double cut_end = 0.95);

}  // namespace inls
