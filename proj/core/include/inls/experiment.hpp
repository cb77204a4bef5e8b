#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inls/classify.hpp"
#include "inls/config.hpp"

namespace inls {

inline constexpr const char* kArtifactVersion = "inls 0.1.0";

// Everything one run produced; serialized as one JSON line per run.
struct RunRecord {
  std::string config_hash;
  std::string config_echo;  // canonical key = value text
  std::optional<VariationalConstants> constants;
  std::optional<ThresholdReport> threshold;
  RunVerdict verdict = VerdictUndetermined{"not run"};
  HaltStatus status = HaltStatus::completed;
  std::optional<bool> trapping_pass;        // when a subthreshold report exists
  std::optional<bool> blowup_monitor_pass;  // when a superthreshold report exists
  std::string diagnostics_csv;
  double wall_seconds = 0.0;
  std::string artifact_version = kArtifactVersion;

  std::string to_json_line() const;
  static RunRecord from_json_line(const std::string& line);
};

// Closed-form initial data families sampled on the configured grid.
FieldState build_initial_data(const ExperimentConfig& cfg);

// Run one experiment end to end: constants (cached), initial data,
// evolution with diagnostics, classification, CSV + record persistence.
// Deterministic for a fixed config and thread count.
RunRecord run_experiment(const ExperimentConfig& cfg);

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsSample>& samples);
std::vector<DiagnosticsSample> read_diagnostics_csv(const std::string& path);

struct SweepRow {
  double amplitude = 0.0;
  double E0 = 0.0;
  double K0 = 0.0;
  bool subthreshold = false;
  std::string verdict;
  std::string config_hash;
  bool failed = false;
};

struct SweepSummary {
  std::vector<SweepRow> rows;  // ascending amplitude
  // consecutive sweep amplitudes bracketing the last non-blow-up and first
  // blow-up verdicts, and the K0 crossing of c
  std::optional<std::pair<double, double>> verdict_transition;
  std::optional<std::pair<double, double>> threshold_crossing;
  std::string summary_csv_path;
};

SweepSummary sweep_amplitude(const ExperimentConfig& tmpl, std::vector<double> amplitudes);

// gnuplot-consumable whitespace tables: one time-series file per record,
// plus a phase-line file over amplitude when several records carry sweep
// rows. Errors on an empty record list.
std::vector<std::string> emit_plotdata(const std::vector<RunRecord>& records,
                                       const std::string& dir);

}  // namespace inls
