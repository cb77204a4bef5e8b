#pragma once

#include <complex>
#include <vector>

#include "inls/grid.hpp"
#include "inls/model.hpp"
#include "inls/spectral.hpp"

namespace inls {

// Complex field samples on a grid at one instant.
struct FieldState {
  GridSpec grid;
  cvec samples;
  double time = 0.0;
};

FieldState make_field(const GridSpec& g);
bool has_nonfinite(const FieldState& u);

// Sphere area sigma_N = 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int N);

// The potential weight (|x|^2 + eps^2)^{-b/2}. eps = 0 requires an offset
// grid so no sample sits at the origin.
struct SingularWeight {
  GridSpec grid;
  std::vector<double> samples;
  double b = 0.0;
  double epsilon = 0.0;
};

SingularWeight make_singular_weight(const GridSpec& g, double b, double epsilon = 0.0);

// Discrete integrals. All rectangle rule; radial grids carry the
// sigma_N r^{N-1} measure.

double mass(const FieldState& u);
double sup_abs(const FieldState& u);
double lp_norm(const FieldState& u, double p);
// integral |u|^p dx (the p-th power of lp_norm, computed directly)
double lp_power_integral(const FieldState& u, double p);

// integral |grad u|^2 dx: spectral on cartesian grids, second-order central
// differences on radial grids (separate accuracy class).
double gradient_sq_integral(const FieldState& u);
// Same quantity by definition; single code path.
inline double hdot1_norm_sq(const FieldState& u) { return gradient_sq_integral(u); }

// P(u) = integral w(x) |u|^{alpha+2} dx  >= 0.
double weighted_potential_integral(const FieldState& u, const SingularWeight& w, double alpha);

// E[u] = 1/2 integral |grad u|^2 - mu/(alpha+2) integral |x|^{-b}|u|^{alpha+2}.
double energy(const FieldState& u, const SingularWeight& w, const ModelParams& p);

struct EnergyParts {
  double kinetic = 0.0;
  double potential = 0.0;
  double energy = 0.0;
};
EnergyParts energy_parts(const FieldState& u, const SingularWeight& w, const ModelParams& p);

// u(t,x) -> lambda^{(2-b)/alpha} u(lambda^2 t, lambda x) resampled onto the
// same grid by trig interpolation. truncation_error estimates the mass
// fraction the rescaling pushed across the box / Nyquist boundary.
struct ScaledField {
  FieldState field;
  double truncation_error = 0.0;
  bool truncated = false;
};
ScaledField scaling_transform(const FieldState& u, double lambda, const ModelParams& p);

}  // namespace inls
