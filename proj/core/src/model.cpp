#include "inls/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace inls {

void ModelParams::validate(bool paper_regime) const {
  if (N < 1 || N > 5) throw dimension_error("model: dimension N must be in 1..5, got " + std::to_string(N));
  if (!(b > 0.0)) throw parameter_error("model: b must be positive");
  if (!(alpha > 0.0)) throw parameter_error("model: alpha must be positive");
  if (mu != 1 && mu != -1) throw parameter_error("model: mu must be +1 or -1");
  if (energy_critical) {
    if (N < 3) throw dimension_error("model: energy_critical requires N >= 3");
    const double want = derive_alpha(N, b);
    if (std::abs(alpha - want) > 1e-12 * std::max(1.0, want))
      throw parameter_error("model: energy_critical requires alpha = (4-2b)/(N-2)");
    if (std::abs(critical_index(*this) - 1.0) > 1e-12)
      throw parameter_error("model: energy_critical parameters have s_c != 1");
  } else if (!exploratory) {
    throw parameter_error("model: non-critical alpha requires the exploratory flag");
  }
  if (paper_regime && !exploratory) {
    if (N < 3 || N > 5) throw dimension_error("model: paper regime requires N in {3,4,5}");
    if (b > paper_b_ceiling(N) + 1e-12)
      throw parameter_error("model: paper regime requires b <= min{(6-N)/2, 4/N}");
  }
}

double derive_alpha(int N, double b) {
  if (N < 3) throw dimension_error("derive_alpha: N >= 3 required, got " + std::to_string(N));
  if (b < 0.0) throw parameter_error("derive_alpha: b >= 0 required");
  return (4.0 - 2.0 * b) / (N - 2);
}

double critical_index(const ModelParams& p) {
  if (!(p.alpha > 0.0)) throw parameter_error("critical_index: alpha > 0 required");
  return 0.5 * p.N - (2.0 - p.b) / p.alpha;
}

double paper_b_ceiling(int N) {
  if (N < 3 || N > 5) throw dimension_error("paper_b_ceiling: N in {3,4,5} required");
  return std::min((6.0 - N) / 2.0, 4.0 / N);
}

bool is_admissible_pair(double q, double r, int N) {
  if (!(q > 0.0) || !(r > 0.0)) return false;
  if (r < 2.0 - 1e-12) return false;
  if (N >= 3 && r > 2.0 * N / (N - 2) + 1e-12) return false;
  // q = inf contributes 2/q = 0.
  const double lhs = (std::isinf(q) ? 0.0 : 2.0 / q) + N / r;
  return std::abs(lhs - 0.5 * N) <= 1e-12;
}

std::optional<Ratio> to_ratio(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction expansion, stopping at the first convergent within tol.
  std::int64_t p0 = 1, q0 = 0, p1 = 0, q1 = 1;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    if (std::abs(fl) > 1e17) break;
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(static_cast<double>(p1) / q1 - x) <= tol * std::max(1.0, std::abs(x)))
      return Ratio(p1, q1);
    const double rem = v - fl;
    if (rem < 1e-15) break;
    v = 1.0 / rem;
  }
  return std::nullopt;
}

namespace {
double ratio_to_double(const Ratio& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}
}  // namespace

double ExponentSet::q0_d() const { return ratio_to_double(q0); }
double ExponentSet::r0_d() const { return ratio_to_double(r0); }
double ExponentSet::rbar_d() const { return ratio_to_double(rbar); }

ExponentSet exponent_set(const ModelParams& p) {
  if (p.N < 3) throw dimension_error("exponent_set: N >= 3 required");
  const auto br = to_ratio(p.b);
  if (!br) throw parameter_error("exponent_set: b not recognizable as a small rational");
  const Ratio b = *br;
  const Ratio N(p.N), one(1), two(2), four(4);
  const Ratio den_q = b * N + N - two;
  const Ratio den_r = N * N + b * N * N + four;
  if (den_q == Ratio(0) || den_r == Ratio(0))
    throw parameter_error("exponent_set: degenerate denominator");
  ExponentSet e;
  e.q0 = two * (N + two) * (b + one) / den_q;
  e.r0 = two * N * (N + two) * (b + one) / den_r;
  e.rbar = two * (N + two) / (N - two);
  return e;
}

}  // namespace inls
