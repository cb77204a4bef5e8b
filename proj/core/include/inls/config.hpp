#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "inls/classify.hpp"
#include "inls/evolve.hpp"
#include "inls/grid.hpp"
#include "inls/model.hpp"

namespace inls {

// Flat typed key = value experiment configuration. The exact grammar is
// documented in the README; unknown keys and range violations are collected
// and reported together via config_error.
struct ExperimentConfig {
  // model.*
  int N = 3;
  double b = 1.0;
  int mu = +1;
  std::optional<double> alpha_override;  // absent = critical (4-2b)/(N-2)
  bool exploratory = false;

  // grid.*
  std::string grid_kind = "cartesian";  // cartesian | radial
  int points = 64;
  double L = 20.0;
  bool offset = true;

  // weight.*
  double epsilon = 0.0;

  // init.*
  std::string family = "gaussian";  // gaussian | sampled-W | translated-gaussian | ring
  double amplitude = 1.0;
  double width = 1.0;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double radius = 3.0;        // ring only
  double cutoff_start = 0.6;  // sampled-W box-fitting cutoff (fractions of L)
  double cutoff_end = 0.95;

  // evolve.* / detect.*
  double dt = 1e-3;
  double t_end = 1.0;
  int checkpoint_stride = 10;
  bool dt_control = false;
  double dt_growth_factor = 1.5;
  int max_halvings = 20;
  bool sponge = false;
  double sponge_inner_fraction = 0.7;
  double sponge_strength = 1.0;
  bool dealias = false;
  double kinetic_cap_factor = 1e3;
  double amplitude_cap = 1e8;

  // virial.*
  std::string virial_weight = "off";  // off | quadratic | bump
  double virial_R = 4.0;

  // classify.*
  ClassifyThresholds classify;

  // output.*
  std::string output_dir = ".";
  std::uint64_t seed = 0;

  ModelParams model() const;
  GridSpec grid() const;
  EvolveConfig evolve_config() const;
  bool in_constants_regime() const;  // critical alpha, N in {3,4,5}, b <= ceiling

  // Sorted key = value lines; parse(canonical()) reproduces the config and
  // canonical() is byte-stable.
  std::string canonical() const;
  // FNV-1a 64 of canonical(), 16 hex digits.
  std::string digest() const;
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace inls
