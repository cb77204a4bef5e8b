#include "inls/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace inls {

ThresholdReport threshold_report(const FieldState& u0, const SingularWeight& w,
                                 const VariationalConstants& consts, const ModelParams& p,
                                 double grid_tol) {
  ThresholdReport rep;
  const auto parts = energy_parts(u0, w, p);
  rep.E0 = parts.energy;
  rep.K0 = parts.kinetic;
  rep.c = consts.c;
  rep.E_W = consts.E_W;
  rep.boundary = std::abs(rep.E0 - rep.E_W) <= grid_tol * rep.E_W ||
                 std::abs(rep.K0 - rep.c) <= grid_tol * rep.c;
  if (!rep.boundary) {
    rep.subthreshold = rep.E0 < rep.E_W && rep.K0 < rep.c;
    rep.superthreshold = rep.E0 < rep.E_W && rep.K0 >= rep.c;
  }
  if (rep.E0 >= 0.0 && rep.E0 <= rep.E_W) rep.y_star = trapping_bound(rep.E0, consts, p.alpha);
  rep.delta_margin = 1.0 - std::sqrt(std::max(0.0, rep.K0 / rep.c));
  return rep;
}

namespace {
double observed_energy_drift(const Trajectory& traj) {
  if (traj.samples.empty()) return 0.0;
  const double e0 = traj.samples.front().energy;
  double d = 0.0;
  for (const auto& s : traj.samples) d = std::max(d, std::abs(s.energy - e0));
  return d;
}
}  // namespace

MonitorResult trapping_monitor(const Trajectory& traj, const ThresholdReport& rep) {
  if (!rep.subthreshold || !rep.y_star)
    throw parameter_error("trapping_monitor: subthreshold report required");
  MonitorResult r;
  r.tol = 10.0 * observed_energy_drift(traj) + 0.01 * *rep.y_star;
  r.pass = true;
  for (const auto& s : traj.samples) {
    r.margin.push_back(*rep.y_star + r.tol - s.kinetic);
    if (s.kinetic > *rep.y_star + r.tol) r.pass = false;
  }
  return r;
}

MonitorResult blowup_monitor(const Trajectory& traj, const ThresholdReport& rep) {
  if (!(rep.superthreshold || rep.boundary))
    throw parameter_error("blowup_monitor: superthreshold report required");
  MonitorResult r;
  r.tol = 10.0 * observed_energy_drift(traj) / rep.c + 0.01;
  r.pass = true;
  for (const auto& s : traj.samples) {
    const double floor = rep.c * (1.0 - r.tol);
    r.margin.push_back(s.kinetic - floor);
    if (s.kinetic < floor) r.pass = false;
  }
  return r;
}

std::string verdict_name(const RunVerdict& v) {
  if (std::holds_alternative<VerdictScattering>(v)) return "Scattering";
  if (std::holds_alternative<VerdictBlowUp>(v)) return "BlowUp";
  if (std::holds_alternative<VerdictGrowUp>(v)) return "GrowUp";
  return "Undetermined";
}

std::string verdict_detail(const RunVerdict& v) {
  char buf[128];
  if (const auto* s = std::get_if<VerdictScattering>(&v)) {
    std::snprintf(buf, sizeof buf, "snorm_final=%.6g proxy_tail=%.6g", s->snorm_final,
                  s->proxy_tail);
    return buf;
  }
  if (const auto* b = std::get_if<VerdictBlowUp>(&v)) {
    std::snprintf(buf, sizeof buf, "t_estimate=%.6g", b->t_estimate);
    return buf;
  }
  if (const auto* g = std::get_if<VerdictGrowUp>(&v)) {
    std::snprintf(buf, sizeof buf, "fitted_rate=%.6g", g->fitted_rate);
    return buf;
  }
  return std::get<VerdictUndetermined>(v).reason;
}

RunVerdict classify_run(const Trajectory& traj, const ClassifyThresholds& th) {
  if (traj.samples.empty()) return VerdictUndetermined{"no checkpoints"};
  if (is_blowup_halt(traj.status)) return VerdictBlowUp{traj.samples.back().t};
  if (traj.status == HaltStatus::numerical_failure)
    return VerdictUndetermined{"numerical failure"};

  const auto& ss = traj.samples;
  // identically-zero field: scatters trivially
  double kin_max = 0.0, kin_min = std::numeric_limits<double>::infinity();
  for (const auto& s : ss) {
    kin_max = std::max(kin_max, s.kinetic);
    kin_min = std::min(kin_min, s.kinetic);
  }
  if (kin_max == 0.0 && ss.back().snorm_cum == 0.0) return VerdictScattering{0.0, 0.0};

  if (static_cast<int>(ss.size()) < th.min_checkpoints)
    return VerdictUndetermined{"insufficient checkpoints"};

  // grow-up: monotone (2% dip tolerance) rise by >= growup_factor
  bool monotone = true;
  for (std::size_t i = 1; i < ss.size(); ++i)
    if (ss[i].kinetic < 0.98 * ss[i - 1].kinetic) monotone = false;
  if (monotone && ss.back().kinetic >= th.growup_factor * ss.front().kinetic) {
    double rate = 0.0;
    const auto sup = running_sup_gradient(traj);
    if (sup.size() >= 10) rate = growup_rate_fit(sup, 0, 0.0).fitted;
    return VerdictGrowUp{rate};
  }

  const bool kinetic_bounded = kin_min > 0.0 && kin_max / kin_min < th.kinetic_ratio;

  const auto inc = window_increments(ss, th.windows);
  double peak = 0.0;
  for (double v : inc) peak = std::max(peak, v);
  const bool snorm_decayed = !inc.empty() && (peak == 0.0 || inc.back() <= peak / th.snorm_decay);

  // proxy tail: summed Cauchy increments over the last quarter of the run
  const double t_tail = ss.front().t + 0.75 * (ss.back().t - ss.front().t);
  double tail = 0.0;
  for (const auto& s : ss)
    if (s.t > t_tail) tail += s.proxy;
  const double h1_0 = std::sqrt(traj.K0);
  const bool proxy_small = tail < th.proxy_tail_frac * h1_0;

  if (kinetic_bounded && snorm_decayed && proxy_small)
    return VerdictScattering{ss.back().snorm_cum, tail};

  std::string why = "not scattering-like:";
  if (!kinetic_bounded) why += " kinetic ratio >= " + std::to_string(th.kinetic_ratio);
  if (!snorm_decayed) why += " snorm increments not decayed";
  if (!proxy_small) why += " proxy tail too large";
  return VerdictUndetermined{why};
}

RateFit growup_rate_fit(const std::vector<std::pair<double, double>>& sup_series, int N,
                        double alpha) {
  RateFit fit;
  if (N > 0) {
    const double denom = N * alpha - 4.0;
    if (std::abs(denom) < 1e-12)
      throw parameter_error("growup_rate_fit: N*alpha = 4, rate exponent undefined");
    fit.predicted = 2.0 / denom;
  }
  if (sup_series.size() < 10)
    throw parameter_error("growup_rate_fit: at least 10 samples required");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& [T, sup] : sup_series) {
    if (!(T > 0.0) || !(sup > 0.0))
      throw parameter_error("growup_rate_fit: positive samples required");
    const double x = std::log(T), y = std::log(sup);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  fit.fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

std::vector<std::pair<double, double>> running_sup_gradient(const Trajectory& traj) {
  std::vector<std::pair<double, double>> out;
  double sup = 0.0;
  for (const auto& s : traj.samples) {
    sup = std::max(sup, std::sqrt(s.kinetic));
    if (s.t > 0.0 && sup > 0.0) out.emplace_back(s.t, sup);
  }
  return out;
}

}  // namespace inls
