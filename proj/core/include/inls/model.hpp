#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>

#include "inls/errors.hpp"

namespace inls {

using Ratio = boost::rational<std::int64_t>;

// Equation parameters for i u_t + Lap u + mu |x|^{-b} |u|^alpha u = 0.
//
// energy_critical pins alpha = (4-2b)/(N-2); exploratory relaxes the
// criticality and theorem-range checks so that off-critical exponents
// (e.g. the 1D convergence tests, or rate studies with N*alpha - 4 != 2)
// can be driven through the same machinery.
struct ModelParams {
  int N = 3;
  double b = 1.0;
  double alpha = 2.0;
  int mu = +1;  // +1 focusing, -1 defocusing
  bool energy_critical = true;
  bool exploratory = false;

  void validate(bool paper_regime = false) const;
};

// alpha = (4 - 2b)/(N - 2), N >= 3.
double derive_alpha(int N, double b);

// s_c = N/2 - (2 - b)/alpha.
double critical_index(const ModelParams& p);

// min{(6-N)/2, 4/N} for N in {3,4,5}.
double paper_b_ceiling(int N);

// 2/q + N/r = N/2 with r in the dimension-dependent admissible range.
// q may be +infinity (the (inf, 2) endpoint).
bool is_admissible_pair(double q, double r, int N);

struct ExponentSet {
  Ratio q0, r0, rbar;
  // Doubles for consumers that do not care about exactness.
  double q0_d() const;
  double r0_d() const;
  double rbar_d() const;
};

// The exponents q0 = 2(N+2)(b+1)/(bN+N-2), r0 = 2N(N+2)(b+1)/(N^2+bN^2+4),
// rbar = 2(N+2)/(N-2), as exact rationals. Requires b recognizable as a
// small rational (every paper-regime b is), else parameter_error.
ExponentSet exponent_set(const ModelParams& p);

// Best rational p/q with q <= max_den reproducing x to within tol, if any.
std::optional<Ratio> to_ratio(double x, std::int64_t max_den = 4096, double tol = 1e-12);

constexpr ModelParams critical_params(int N, double b, int mu = +1) {
  return ModelParams{N, b, (4.0 - 2.0 * b) / (N - 2), mu, true, false};
}

}  // namespace inls
