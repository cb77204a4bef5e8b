// Command-line front end: groundstate constants tables, single evolution
// runs, record re-classification, amplitude sweeps, and the virial
// consistency check.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 blow-up halt (still a successful record).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "inls/experiment.hpp"
#include "inls/ground_state.hpp"
#include "inls/snapshot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBlowup = 4;

void print_constants_row(const inls::VariationalConstants& vc) {
  std::printf("%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.3g\n", vc.N, vc.b, vc.alpha, vc.c, vc.C1,
              vc.E_W, vc.quadrature_error);
}

int cmd_groundstate(int N, double b, bool whole_grid) {
  std::printf("N,b,alpha,c,C1,E_W,quadrature_error\n");
  if (!whole_grid) {
    print_constants_row(inls::compute_constants(N, b));
    return kExitOk;
  }
  for (int n : {3, 4, 5}) {
    for (double bb : {0.25, 0.5, 0.75, 1.0, 4.0 / 3.0}) {
      if (bb > inls::paper_b_ceiling(n) + 1e-12) continue;
      print_constants_row(inls::compute_constants(n, bb));
    }
  }
  return kExitOk;
}

int exit_code_for(const inls::RunRecord& rec) {
  if (rec.status == inls::HaltStatus::numerical_failure) return kExitNumerical;
  if (inls::is_blowup_halt(rec.status)) return kExitBlowup;
  return kExitOk;
}

void print_record_summary(const inls::RunRecord& rec) {
  std::printf("record %s\n", rec.config_hash.c_str());
  std::printf("  status   %s\n", inls::to_string(rec.status));
  std::printf("  verdict  %s (%s)\n", inls::verdict_name(rec.verdict).c_str(),
              inls::verdict_detail(rec.verdict).c_str());
  if (rec.threshold) {
    std::printf("  E0=%.8g E_W=%.8g K0=%.8g c=%.8g sub=%d super=%d boundary=%d\n",
                rec.threshold->E0, rec.threshold->E_W, rec.threshold->K0, rec.threshold->c,
                rec.threshold->subthreshold ? 1 : 0, rec.threshold->superthreshold ? 1 : 0,
                rec.threshold->boundary ? 1 : 0);
  }
  if (rec.trapping_pass) std::printf("  trapping_monitor %s\n", *rec.trapping_pass ? "pass" : "FAIL");
  if (rec.blowup_monitor_pass)
    std::printf("  blowup_monitor %s\n", *rec.blowup_monitor_pass ? "pass" : "FAIL");
  std::printf("  diagnostics %s\n", rec.diagnostics_csv.c_str());
  std::printf("  wall %.2fs\n", rec.wall_seconds);
}

int cmd_evolve(const std::string& config_path) {
  const auto cfg = inls::load_config(config_path);
  const auto rec = inls::run_experiment(cfg);
  print_record_summary(rec);
  return exit_code_for(rec);
}

int cmd_classify(const std::string& record_path) {
  std::ifstream in(record_path);
  if (!in) {
    std::fprintf(stderr, "cannot open record %s\n", record_path.c_str());
    return kExitConfig;
  }
  std::string line;
  std::getline(in, line);
  auto rec = inls::RunRecord::from_json_line(line);
  // Re-derive the verdict from the persisted diagnostics series.
  const auto samples = inls::read_diagnostics_csv(rec.diagnostics_csv);
  const auto cfg = inls::parse_config(rec.config_echo);
  inls::Trajectory traj;
  traj.samples = samples;
  traj.status = rec.status;
  traj.K0 = samples.empty() ? 0.0 : samples.front().kinetic;
  traj.halt_time = samples.empty() ? 0.0 : samples.back().t;
  const auto verdict = inls::classify_run(traj, cfg.classify);
  std::printf("verdict %s (%s)\n", inls::verdict_name(verdict).c_str(),
              inls::verdict_detail(verdict).c_str());
  const bool agrees = inls::verdict_name(verdict) == inls::verdict_name(rec.verdict);
  std::printf("record verdict %s (%s)\n", inls::verdict_name(rec.verdict).c_str(),
              agrees ? "agrees" : "DIFFERS");
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& amplitudes) {
  const auto tmpl = inls::load_config(config_path);
  const auto sum = inls::sweep_amplitude(tmpl, amplitudes);
  std::printf("A,E0,K0,subthreshold,verdict\n");
  for (const auto& r : sum.rows)
    std::printf("%.6g,%.8g,%.8g,%s,%s\n", r.amplitude, r.E0, r.K0,
                r.subthreshold ? "true" : "false", r.verdict.c_str());
  if (sum.verdict_transition)
    std::printf("verdict transition bracket: [%.6g, %.6g]\n", sum.verdict_transition->first,
                sum.verdict_transition->second);
  else
    std::printf("verdict transition bracket: none\n");
  if (sum.threshold_crossing)
    std::printf("threshold crossing bracket: [%.6g, %.6g]\n", sum.threshold_crossing->first,
                sum.threshold_crossing->second);
  else
    std::printf("threshold crossing bracket: none\n");
  std::printf("summary %s\n", sum.summary_csv_path.c_str());
  return kExitOk;
}

int cmd_virial_check(const std::string& config_path) {
  auto cfg = inls::load_config(config_path);
  if (cfg.virial_weight == "off") cfg.virial_weight = "quadratic";
  cfg.validate();
  const auto params = cfg.model();
  const auto grid = cfg.grid();
  const auto weight = inls::make_singular_weight(grid, cfg.b, cfg.epsilon);
  const auto vw = cfg.virial_weight == "bump" ? inls::make_bump_weight(cfg.virial_R, grid)
                                              : inls::make_quadratic_weight(cfg.virial_R, grid);
  auto u0 = inls::build_initial_data(cfg);

  inls::DiagnosticsPlan plan;
  plan.weight = &weight;
  plan.params = &params;
  plan.virial = &vw;
  const auto traj = inls::evolve(u0, weight, params, cfg.evolve_config(), plan);

  std::printf("t,Ma,dMa_dt_central,virial_rhs,residual,shortcut_8KP\n");
  double max_resid = 0.0;
  const auto& ss = traj.samples;
  for (std::size_t i = 1; i + 1 < ss.size(); ++i) {
    const double dmadt = (ss[i + 1].Ma - ss[i - 1].Ma) / (ss[i + 1].t - ss[i - 1].t);
    const double resid = dmadt - ss[i].virial_rhs;
    const double shortcut = 8.0 * (ss[i].kinetic - params.mu * ss[i].potential);
    max_resid = std::max(max_resid, std::abs(resid));
    std::printf("%.8g,%.10g,%.10g,%.10g,%.3g,%.10g\n", ss[i].t, ss[i].Ma, dmadt,
                ss[i].virial_rhs, resid, shortcut);
  }
  std::printf("max |dMa/dt - virial_rhs| = %.6g\n", max_resid);
  if (traj.status == inls::HaltStatus::numerical_failure) return kExitNumerical;
  if (inls::is_blowup_halt(traj.status)) return kExitBlowup;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral simulator and variational toolkit for the "
               "energy-critical inhomogeneous NLS"};
  app.require_subcommand(1);

  auto* gs = app.add_subcommand("groundstate", "print ground-state constants as CSV");
  int gs_N = 3;
  double gs_b = 1.0;
  bool gs_all = false;
  gs->add_option("--N", gs_N, "dimension (3..5)");
  gs->add_option("--b", gs_b, "inhomogeneity exponent");
  gs->add_flag("--grid", gs_all, "print the whole validated (N,b) grid");

  auto* ev = app.add_subcommand("evolve", "run one experiment from a config file");
  std::string ev_cfg;
  ev->add_option("--config", ev_cfg, "config path")->required();

  auto* cl = app.add_subcommand("classify", "re-classify a persisted run record");
  std::string cl_rec;
  cl->add_option("--record", cl_rec, "record JSON path")->required();

  auto* sw = app.add_subcommand("sweep", "amplitude sweep over a config template");
  std::string sw_cfg;
  std::vector<double> sw_amps;
  sw->add_option("--config", sw_cfg, "config path")->required();
  sw->add_option("--amplitudes", sw_amps, "amplitude list")->required()->delimiter(',');

  auto* vc = app.add_subcommand("virial-check", "central-difference virial identity check");
  std::string vc_cfg;
  vc->add_option("--config", vc_cfg, "config path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gs->parsed()) return cmd_groundstate(gs_N, gs_b, gs_all);
    if (ev->parsed()) return cmd_evolve(ev_cfg);
    if (cl->parsed()) return cmd_classify(cl_rec);
    if (sw->parsed()) return cmd_sweep(sw_cfg, sw_amps);
    if (vc->parsed()) return cmd_virial_check(vc_cfg);
  } catch (const inls::config_error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const inls::parameter_error& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
