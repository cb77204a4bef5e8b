#include "inls/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "inls/ground_state.hpp"
#include "inls/threads.hpp"

namespace inls {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json verdict_to_json(const RunVerdict& v) {
  json j;
  j["type"] = verdict_name(v);
  if (const auto* s = std::get_if<VerdictScattering>(&v)) {
    j["snorm_final"] = s->snorm_final;
    j["proxy_tail"] = s->proxy_tail;
  } else if (const auto* b = std::get_if<VerdictBlowUp>(&v)) {
    j["t_estimate"] = b->t_estimate;
  } else if (const auto* g = std::get_if<VerdictGrowUp>(&v)) {
    j["fitted_rate"] = g->fitted_rate;
  } else {
    j["reason"] = std::get<VerdictUndetermined>(v).reason;
  }
  return j;
}

RunVerdict verdict_from_json(const json& j) {
  const std::string type = j.at("type");
  if (type == "Scattering") return VerdictScattering{j.at("snorm_final"), j.at("proxy_tail")};
  if (type == "BlowUp") return VerdictBlowUp{j.at("t_estimate")};
  if (type == "GrowUp") return VerdictGrowUp{j.at("fitted_rate")};
  return VerdictUndetermined{j.at("reason")};
}

HaltStatus status_from_string(const std::string& s) {
  if (s == "completed") return HaltStatus::completed;
  if (s == "blowup-cap") return HaltStatus::blowup_cap;
  if (s == "blowup-overflow") return HaltStatus::blowup_overflow;
  if (s == "blowup-suspected-dt-exhausted") return HaltStatus::blowup_dt_exhausted;
  return HaltStatus::numerical_failure;
}

}  // namespace

std::string RunRecord::to_json_line() const {
  json j;
  j["config_hash"] = config_hash;
  j["config_echo"] = config_echo;
  if (constants) {
    j["constants"] = {{"N", constants->N},         {"b", constants->b},
                      {"alpha", constants->alpha}, {"c", constants->c},
                      {"C1", constants->C1},       {"E_W", constants->E_W},
                      {"P_W", constants->P_W},     {"quadrature_error", constants->quadrature_error}};
  }
  if (threshold) {
    json t;
    t["E0"] = threshold->E0;
    t["K0"] = threshold->K0;
    t["c"] = threshold->c;
    t["E_W"] = threshold->E_W;
    t["subthreshold"] = threshold->subthreshold;
    t["superthreshold"] = threshold->superthreshold;
    t["boundary"] = threshold->boundary;
    t["delta_margin"] = threshold->delta_margin;
    if (threshold->y_star) t["y_star"] = *threshold->y_star;
    j["threshold"] = t;
  }
  j["verdict"] = verdict_to_json(verdict);
  j["status"] = to_string(status);
  if (trapping_pass) j["trapping_pass"] = *trapping_pass;
  if (blowup_monitor_pass) j["blowup_monitor_pass"] = *blowup_monitor_pass;
  j["diagnostics_csv"] = diagnostics_csv;
  j["wall_seconds"] = wall_seconds;
  j["artifact_version"] = artifact_version;
  return j.dump();
}

RunRecord RunRecord::from_json_line(const std::string& line) {
  const json j = json::parse(line);
  RunRecord r;
  r.config_hash = j.at("config_hash");
  r.config_echo = j.at("config_echo");
  if (j.contains("constants")) {
    const auto& c = j["constants"];
    VariationalConstants vc;
    vc.N = c.at("N");
    vc.b = c.at("b");
    vc.alpha = c.at("alpha");
    vc.c = c.at("c");
    vc.C1 = c.at("C1");
    vc.E_W = c.at("E_W");
    vc.P_W = c.at("P_W");
    vc.quadrature_error = c.at("quadrature_error");
    r.constants = vc;
  }
  if (j.contains("threshold")) {
    const auto& t = j["threshold"];
    ThresholdReport tr;
    tr.E0 = t.at("E0");
    tr.K0 = t.at("K0");
    tr.c = t.at("c");
    tr.E_W = t.at("E_W");
    tr.subthreshold = t.at("subthreshold");
    tr.superthreshold = t.at("superthreshold");
    tr.boundary = t.at("boundary");
    tr.delta_margin = t.at("delta_margin");
    if (t.contains("y_star")) tr.y_star = t["y_star"].get<double>();
    r.threshold = tr;
  }
  r.verdict = verdict_from_json(j.at("verdict"));
  r.status = status_from_string(j.at("status"));
  if (j.contains("trapping_pass")) r.trapping_pass = j["trapping_pass"].get<bool>();
  if (j.contains("blowup_monitor_pass"))
    r.blowup_monitor_pass = j["blowup_monitor_pass"].get<bool>();
  r.diagnostics_csv = j.at("diagnostics_csv");
  r.wall_seconds = j.at("wall_seconds");
  r.artifact_version = j.at("artifact_version");
  return r;
}

FieldState build_initial_data(const ExperimentConfig& cfg) {
  const GridSpec g = cfg.grid();
  if (cfg.family == "sampled-W") {
    GroundStateProfile prof(cfg.N, cfg.b);
    return sample_ground_state(g, prof, cfg.amplitude, cfg.cutoff_start, cfg.cutoff_end);
  }
  FieldState u = make_field(g);
  const double A = cfg.amplitude;
  const double s2 = 2.0 * cfg.width * cfg.width;
  const bool translated = cfg.family == "translated-gaussian";
  const bool ring = cfg.family == "ring";
  if (g.kind == GridKind::radial) {
    for (int j = 0; j < g.n; ++j) {
      const double r = g.coord(j);
      if (ring) {
        const double d = r - cfg.radius;
        u.samples[j] = A * std::exp(-d * d / s2);
      } else {
        // radial grids hold radial data; translated-gaussian is rejected upstream
        u.samples[j] = A * std::exp(-r * r / s2);
      }
    }
    return u;
  }
  const int n = g.n;
  int idx[3] = {0, 0, 0};
  std::size_t flat = 0;
  const std::size_t total = g.total_points();
  while (flat < total) {
    double r2 = 0.0;
    for (int d = 0; d < g.dims; ++d) {
      const double x = g.coord(idx[d]) - (translated ? cfg.center[d] : 0.0);
      r2 += x * x;
    }
    if (ring) {
      const double d = std::sqrt(r2) - cfg.radius;
      u.samples[flat] = A * std::exp(-d * d / s2);
    } else {
      u.samples[flat] = A * std::exp(-r2 / s2);
    }
    ++flat;
    for (int d = g.dims - 1; d >= 0; --d) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
  }
  return u;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsSample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "t,mass,kinetic,potential,energy,Ma,virial_rhs,VR,snorm_cum,sup_abs,proxy\n";
  for (const auto& s : samples) {
    out << fmt_double(s.t) << ',' << fmt_double(s.mass) << ',' << fmt_double(s.kinetic) << ','
        << fmt_double(s.potential) << ',' << fmt_double(s.energy) << ',' << fmt_double(s.Ma)
        << ',' << fmt_double(s.virial_rhs) << ',' << fmt_double(s.VR) << ','
        << fmt_double(s.snorm_cum) << ',' << fmt_double(s.sup_abs) << ',' << fmt_double(s.proxy)
        << '\n';
  }
}

std::vector<DiagnosticsSample> read_diagnostics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty diagnostics CSV: " + path);
  if (line != "t,mass,kinetic,potential,energy,Ma,virial_rhs,VR,snorm_cum,sup_abs,proxy")
    throw std::runtime_error("unexpected diagnostics CSV header in " + path);
  std::vector<DiagnosticsSample> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    DiagnosticsSample s;
    double* fields[] = {&s.t,  &s.mass,       &s.kinetic,   &s.potential, &s.energy, &s.Ma,
                        &s.virial_rhs, &s.VR, &s.snorm_cum, &s.sup_abs,   &s.proxy};
    std::stringstream ss(line);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',') && i < 11) *fields[i++] = std::stod(part);
    if (i != 11) throw std::runtime_error("short diagnostics CSV row in " + path);
    samples.push_back(s);
  }
  return samples;
}

RunRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();

  RunRecord rec;
  rec.config_hash = cfg.digest();
  rec.config_echo = cfg.canonical();

  const ModelParams params = cfg.model();
  const GridSpec grid = cfg.grid();
  const SingularWeight weight = make_singular_weight(grid, cfg.b, cfg.epsilon);
  FieldState u0 = build_initial_data(cfg);

  std::optional<VirialWeight> vw;
  if (cfg.virial_weight == "quadratic") vw = make_quadratic_weight(cfg.virial_R, grid);
  if (cfg.virial_weight == "bump") vw = make_bump_weight(cfg.virial_R, grid);

  if (cfg.in_constants_regime()) {
    rec.constants = shared_constants(cfg.N, cfg.b);
    rec.threshold = threshold_report(u0, weight, *rec.constants, params);
  }

  DiagnosticsPlan plan;
  plan.weight = &weight;
  plan.params = &params;
  plan.virial = vw ? &*vw : nullptr;
  plan.proxy = true;

  const EvolveConfig ecfg = cfg.evolve_config();
  const Trajectory traj = grid.kind == GridKind::radial
                              ? radial_evolve(u0, weight, params, ecfg, plan)
                              : evolve(u0, weight, params, ecfg, plan);

  rec.status = traj.status;
  rec.verdict = classify_run(traj, cfg.classify);
  if (rec.threshold && rec.threshold->subthreshold)
    rec.trapping_pass = trapping_monitor(traj, *rec.threshold).pass;
  if (rec.threshold && rec.threshold->superthreshold)
    rec.blowup_monitor_pass = blowup_monitor(traj, *rec.threshold).pass;

  fs::create_directories(cfg.output_dir);
  rec.diagnostics_csv = (fs::path(cfg.output_dir) / (rec.config_hash + ".csv")).string();
  write_diagnostics_csv(rec.diagnostics_csv, traj.samples);

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  const auto record_path = fs::path(cfg.output_dir) / (rec.config_hash + ".json");
  {
    std::ofstream rf(record_path, std::ios::binary);
    rf << rec.to_json_line() << '\n';
  }
  {
    std::ofstream jl(fs::path(cfg.output_dir) / "records.jsonl",
                     std::ios::binary | std::ios::app);
    jl << rec.to_json_line() << '\n';
  }
  return rec;
}

SweepSummary sweep_amplitude(const ExperimentConfig& tmpl, std::vector<double> amplitudes) {
  if (amplitudes.empty()) throw parameter_error("sweep: at least one amplitude required");
  std::sort(amplitudes.begin(), amplitudes.end());
  amplitudes.erase(std::unique(amplitudes.begin(), amplitudes.end()), amplitudes.end());

  int workers = 1;
  if (const char* env = std::getenv("INLS_SWEEP_WORKERS")) workers = std::max(1, std::atoi(env));
  workers = std::min<int>(workers, static_cast<int>(amplitudes.size()));

  std::vector<RunRecord> records(amplitudes.size());
  std::vector<SweepRow> rows(amplitudes.size());
  auto run_one = [&](std::size_t i) {
    ExperimentConfig cfg = tmpl;
    cfg.amplitude = amplitudes[i];
    SweepRow row;
    row.amplitude = amplitudes[i];
    try {
      records[i] = run_experiment(cfg);
      const auto& rec = records[i];
      row.config_hash = rec.config_hash;
      row.verdict = verdict_name(rec.verdict);
      if (rec.threshold) {
        row.E0 = rec.threshold->E0;
        row.K0 = rec.threshold->K0;
        row.subthreshold = rec.threshold->subthreshold;
      }
    } catch (const std::exception& e) {
      row.failed = true;
      row.verdict = std::string("failed: ") + e.what();
    }
    rows[i] = row;
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < amplitudes.size(); ++i) run_one(i);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next.fetch_add(1); i < amplitudes.size(); i = next.fetch_add(1))
          run_one(i);
      }));
    for (auto& f : futs) f.get();
  }

  SweepSummary sum;
  sum.rows = rows;
  // verdict transition: last non-BlowUp amplitude followed by the first BlowUp
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (!rows[i].failed && rows[i].verdict != "BlowUp" && rows[i + 1].verdict == "BlowUp") {
      sum.verdict_transition = {rows[i].amplitude, rows[i + 1].amplitude};
    }
  }
  const VariationalConstants* consts = nullptr;
  if (tmpl.in_constants_regime()) consts = &shared_constants(tmpl.N, tmpl.b);
  if (consts) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
      if (rows[i].K0 < consts->c && rows[i + 1].K0 >= consts->c) {
        sum.threshold_crossing = {rows[i].amplitude, rows[i + 1].amplitude};
        break;
      }
  }

  fs::create_directories(tmpl.output_dir);
  sum.summary_csv_path = (fs::path(tmpl.output_dir) / "sweep_summary.csv").string();
  std::ofstream out(sum.summary_csv_path, std::ios::binary);
  out << "A,E0,K0,subthreshold,verdict\n";
  for (const auto& r : rows)
    out << fmt_double(r.amplitude) << ',' << fmt_double(r.E0) << ',' << fmt_double(r.K0) << ','
        << (r.subthreshold ? "true" : "false") << ',' << r.verdict << '\n';
  return sum;
}

std::vector<std::string> emit_plotdata(const std::vector<RunRecord>& records,
                                       const std::string& dir) {
  if (records.empty()) throw parameter_error("emit_plotdata: at least one record required");
  fs::create_directories(dir);
  std::vector<std::string> written;
  struct PhaseRow {
    double A, E0, K0;
    int verdict_code;
    bool sub;
  };
  std::vector<PhaseRow> phase;
  for (const auto& rec : records) {
    const auto samples = read_diagnostics_csv(rec.diagnostics_csv);
    const auto path = (fs::path(dir) / (rec.config_hash + "_timeseries.dat")).string();
    std::ofstream out(path, std::ios::binary);
    out << "# t mass kinetic potential energy Ma virial_rhs VR snorm_cum sup_abs proxy\n";
    for (const auto& s : samples) {
      out << fmt_double(s.t) << ' ' << fmt_double(s.mass) << ' ' << fmt_double(s.kinetic) << ' '
          << fmt_double(s.potential) << ' ' << fmt_double(s.energy) << ' ' << fmt_double(s.Ma)
          << ' ' << fmt_double(s.virial_rhs) << ' ' << fmt_double(s.VR) << ' '
          << fmt_double(s.snorm_cum) << ' ' << fmt_double(s.sup_abs) << ' '
          << fmt_double(s.proxy) << '\n';
    }
    written.push_back(path);
    if (rec.threshold) {
      ExperimentConfig cfg = parse_config(rec.config_echo);
      int code = 0;  // 0 undetermined, 1 scattering, 2 blowup, 3 growup
      const std::string name = verdict_name(rec.verdict);
      if (name == "Scattering") code = 1;
      if (name == "BlowUp") code = 2;
      if (name == "GrowUp") code = 3;
      phase.push_back(
          {cfg.amplitude, rec.threshold->E0, rec.threshold->K0, code, rec.threshold->subthreshold});
    }
  }
  if (phase.size() >= 2) {
    std::sort(phase.begin(), phase.end(),
              [](const PhaseRow& a, const PhaseRow& b) { return a.A < b.A; });
    const auto path = (fs::path(dir) / "phase_line.dat").string();
    std::ofstream out(path, std::ios::binary);
    out << "# A E0 K0 subthreshold verdict_code\n";
    for (const auto& r : phase)
      out << fmt_double(r.A) << ' ' << fmt_double(r.E0) << ' ' << fmt_double(r.K0) << ' '
          << (r.sub ? 1 : 0) << ' ' << r.verdict_code << '\n';
    written.push_back(path);
  }
  return written;
}

}  // namespace inls
