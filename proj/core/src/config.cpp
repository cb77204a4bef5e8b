#include "inls/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace inls {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool parse_bool(const std::string& v, bool& out) {
  if (v == "true" || v == "on" || v == "1") { out = true; return true; }
  if (v == "false" || v == "off" || v == "0") { out = false; return true; }
  return false;
}

bool parse_double(const std::string& v, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& v, long long& out) {
  try {
    std::size_t pos = 0;
    out = std::stoll(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

ModelParams ExperimentConfig::model() const {
  ModelParams p;
  p.N = N;
  p.b = b;
  p.mu = mu;
  if (alpha_override) {
    p.alpha = *alpha_override;
    p.energy_critical =
        N >= 3 && std::abs(p.alpha - derive_alpha(N, b)) <= 1e-12 * std::max(1.0, p.alpha);
  } else {
    p.alpha = derive_alpha(N, b);
    p.energy_critical = true;
  }
  p.exploratory = exploratory;
  return p;
}

GridSpec ExperimentConfig::grid() const {
  if (grid_kind == "radial") return make_radial_grid(N, points, L);
  const int dims = std::min(N, 3);
  return make_grid(dims, points, L, offset);
}

EvolveConfig ExperimentConfig::evolve_config() const {
  EvolveConfig e;
  e.dt = dt;
  e.t_end = t_end;
  e.checkpoint_stride = checkpoint_stride;
  e.dt_control = dt_control;
  e.dt_growth_factor = dt_growth_factor;
  e.max_halvings = max_halvings;
  if (sponge) e.sponge = SpongeParams{sponge_inner_fraction, sponge_strength};
  e.dealias = dealias;
  e.kinetic_cap_factor = kinetic_cap_factor;
  e.amplitude_cap = amplitude_cap;
  return e;
}

bool ExperimentConfig::in_constants_regime() const {
  return !alpha_override && N >= 3 && N <= 5 && b > 0.0 && b <= paper_b_ceiling(N) + 1e-12;
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["model.N"] = std::to_string(N);
  kv["model.b"] = fmt_double(b);
  kv["model.mu"] = std::to_string(mu);
  kv["model.alpha"] = alpha_override ? fmt_double(*alpha_override) : "critical";
  kv["model.exploratory"] = exploratory ? "true" : "false";
  kv["grid.kind"] = grid_kind;
  kv["grid.points"] = std::to_string(points);
  kv["grid.L"] = fmt_double(L);
  kv["grid.offset"] = offset ? "true" : "false";
  kv["weight.epsilon"] = fmt_double(epsilon);
  kv["init.family"] = family;
  kv["init.amplitude"] = fmt_double(amplitude);
  kv["init.width"] = fmt_double(width);
  kv["init.center"] = fmt_double(center[0]) + "," + fmt_double(center[1]) + "," +
                      fmt_double(center[2]);
  kv["init.radius"] = fmt_double(radius);
  kv["init.cutoff_start"] = fmt_double(cutoff_start);
  kv["init.cutoff_end"] = fmt_double(cutoff_end);
  kv["evolve.dt"] = fmt_double(dt);
  kv["evolve.t_end"] = fmt_double(t_end);
  kv["evolve.checkpoint_stride"] = std::to_string(checkpoint_stride);
  kv["evolve.dt_control"] = dt_control ? "true" : "false";
  kv["evolve.dt_growth_factor"] = fmt_double(dt_growth_factor);
  kv["evolve.max_halvings"] = std::to_string(max_halvings);
  kv["evolve.sponge"] = sponge ? "true" : "false";
  kv["evolve.sponge_inner_fraction"] = fmt_double(sponge_inner_fraction);
  kv["evolve.sponge_strength"] = fmt_double(sponge_strength);
  kv["evolve.dealias"] = dealias ? "true" : "false";
  kv["detect.kinetic_cap_factor"] = fmt_double(kinetic_cap_factor);
  kv["detect.amplitude_cap"] = fmt_double(amplitude_cap);
  kv["virial.weight"] = virial_weight;
  kv["virial.R"] = fmt_double(virial_R);
  kv["classify.kinetic_ratio"] = fmt_double(classify.kinetic_ratio);
  kv["classify.snorm_decay"] = fmt_double(classify.snorm_decay);
  kv["classify.proxy_tail"] = fmt_double(classify.proxy_tail_frac);
  kv["classify.growup_factor"] = fmt_double(classify.growup_factor);
  kv["output.dir"] = output_dir;
  kv["seed"] = std::to_string(seed);
  std::string out;
  for (const auto& [k, v] : kv) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

std::string ExperimentConfig::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ExperimentConfig::validate() const {
  std::vector<std::string> bad;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) bad.push_back(msg);
  };
  check(N >= 1 && N <= 5, "model.N: dimension must be in 1..5 (model module contract)");
  check(b > 0.0, "model.b: b > 0 required (model module contract)");
  check(mu == 1 || mu == -1, "model.mu: must be +1 or -1 (model module contract)");
  if (alpha_override) {
    check(*alpha_override > 0.0, "model.alpha: alpha > 0 required (model module contract)");
    if (N >= 3 && b > 0.0 && !exploratory) {
      const double crit = derive_alpha(N, b);
      check(std::abs(*alpha_override - crit) <= 1e-12 * std::max(1.0, crit),
            "model.alpha: non-critical alpha requires model.exploratory = true "
            "(model module design decision)");
    } else if (N < 3) {
      check(exploratory,
            "model.alpha: N < 3 has no critical alpha; model.exploratory = true required");
    }
  } else {
    check(N >= 3, "model.alpha: critical alpha needs model.N >= 3 (model module contract)");
    if (N >= 3 && N <= 5 && b > 0.0 && !exploratory)
      check(b <= paper_b_ceiling(N) + 1e-12,
            "model.b: critical runs need b <= min{(6-N)/2, 4/N} "
            "(groundstate module contract; set model.exploratory to override)");
  }
  check(grid_kind == "cartesian" || grid_kind == "radial",
        "grid.kind: must be cartesian or radial");
  if (grid_kind == "radial")
    check(N >= 3 && N <= 5, "grid.kind: radial grids require model.N in {3,4,5} (field module)");
  if (grid_kind == "cartesian")
    check(N <= 3, "grid.kind: cartesian grids support model.N <= 3; use radial for N in {4,5}");
  check(points > 0 && (points & (points - 1)) == 0,
        "grid.points: power of two required (field module contract)");
  check(L > 0.0, "grid.L: L > 0 required");
  check(epsilon >= 0.0, "weight.epsilon: nonnegative required");
  if (epsilon == 0.0 && grid_kind == "cartesian")
    check(offset, "weight.epsilon: epsilon = 0 requires grid.offset = true (field module)");
  check(family == "gaussian" || family == "sampled-W" || family == "translated-gaussian" ||
            family == "ring",
        "init.family: one of gaussian, sampled-W, translated-gaussian, ring");
  check(amplitude >= 0.0, "init.amplitude: nonnegative required");
  check(width > 0.0, "init.width: positive required");
  if (family == "sampled-W") {
    const bool w_ok = N >= 3 && N <= 5 && b > 0.0 && b <= paper_b_ceiling(std::clamp(N, 3, 5)) + 1e-12;
    check(w_ok, "init.family: sampled-W requires (N, b) in the groundstate validated grid");
    check(0.0 < cutoff_start && cutoff_start < cutoff_end && cutoff_end <= 1.0,
          "init.cutoff_start/end: 0 < start < end <= 1 required");
  }
  check(dt > 0.0, "evolve.dt: positive required (evolve module contract)");
  check(t_end >= 0.0, "evolve.t_end: nonnegative required");
  check(checkpoint_stride >= 1, "evolve.checkpoint_stride: >= 1 required");
  if (dt_control)
    check(dt_growth_factor > 1.0, "evolve.dt_growth_factor: > 1 required (evolve module)");
  check(max_halvings >= 0, "evolve.max_halvings: >= 0 required");
  if (sponge) {
    check(sponge_inner_fraction > 0.0 && sponge_inner_fraction < 1.0,
          "evolve.sponge_inner_fraction: in (0,1) required (evolve module contract)");
    check(sponge_strength >= 0.0 && sponge_strength * dt <= 1.0,
          "evolve.sponge_strength: strength*dt must lie in [0,1]");
  }
  check(kinetic_cap_factor > 1.0, "detect.kinetic_cap_factor: > 1 required");
  check(amplitude_cap > 0.0, "detect.amplitude_cap: positive required");
  check(virial_weight == "off" || virial_weight == "quadratic" || virial_weight == "bump",
        "virial.weight: one of off, quadratic, bump");
  if (virial_weight != "off") {
    check(grid_kind == "cartesian", "virial.weight: needs a cartesian grid (diagnostics module)");
    check(virial_R > 0.0, "virial.R: positive required");
    if (virial_weight == "quadratic")
      check(2.0 * virial_R < L, "virial.R: 2R must lie strictly inside the box (diagnostics)");
    else
      check(10.0 * virial_R < L, "virial.R: 10R must lie strictly inside the box (diagnostics)");
  }
  check(classify.kinetic_ratio > 1.0, "classify.kinetic_ratio: > 1 required");
  check(classify.snorm_decay > 1.0, "classify.snorm_decay: > 1 required");
  check(classify.proxy_tail_frac > 0.0, "classify.proxy_tail: positive required");
  check(classify.growup_factor > 1.0, "classify.growup_factor: > 1 required");
  if (!bad.empty()) throw config_error(std::move(bad));
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::vector<std::string> bad;
  std::map<std::string, std::function<bool(const std::string&)>> setters;

  auto dbl = [&](double& field) {
    return [&field](const std::string& v) { return parse_double(v, field); };
  };
  auto intf = [&](int& field) {
    return [&field](const std::string& v) {
      long long x;
      if (!parse_int(v, x)) return false;
      field = static_cast<int>(x);
      return true;
    };
  };
  auto boolf = [&](bool& field) {
    return [&field](const std::string& v) { return parse_bool(v, field); };
  };
  auto strf = [&](std::string& field) {
    return [&field](const std::string& v) {
      field = v;
      return true;
    };
  };

  setters["model.N"] = intf(c.N);
  setters["model.b"] = dbl(c.b);
  setters["model.mu"] = intf(c.mu);
  setters["model.alpha"] = [&c](const std::string& v) {
    if (v == "critical") {
      c.alpha_override.reset();
      return true;
    }
    double x;
    if (!parse_double(v, x)) return false;
    c.alpha_override = x;
    return true;
  };
  setters["model.exploratory"] = boolf(c.exploratory);
  setters["grid.kind"] = strf(c.grid_kind);
  setters["grid.points"] = intf(c.points);
  setters["grid.L"] = dbl(c.L);
  setters["grid.offset"] = boolf(c.offset);
  setters["weight.epsilon"] = dbl(c.epsilon);
  setters["init.family"] = strf(c.family);
  setters["init.amplitude"] = dbl(c.amplitude);
  setters["init.width"] = dbl(c.width);
  setters["init.center"] = [&c](const std::string& v) {
    std::stringstream ss(v);
    std::string part;
    int i = 0;
    c.center = {0.0, 0.0, 0.0};
    while (std::getline(ss, part, ',')) {
      if (i >= 3) return false;
      if (!parse_double(trim(part), c.center[i])) return false;
      ++i;
    }
    return i >= 1;
  };
  setters["init.radius"] = dbl(c.radius);
  setters["init.cutoff_start"] = dbl(c.cutoff_start);
  setters["init.cutoff_end"] = dbl(c.cutoff_end);
  setters["evolve.dt"] = dbl(c.dt);
  setters["evolve.t_end"] = dbl(c.t_end);
  setters["evolve.checkpoint_stride"] = intf(c.checkpoint_stride);
  setters["evolve.dt_control"] = boolf(c.dt_control);
  setters["evolve.dt_growth_factor"] = dbl(c.dt_growth_factor);
  setters["evolve.max_halvings"] = intf(c.max_halvings);
  setters["evolve.sponge"] = boolf(c.sponge);
  setters["evolve.sponge_inner_fraction"] = dbl(c.sponge_inner_fraction);
  setters["evolve.sponge_strength"] = dbl(c.sponge_strength);
  setters["evolve.dealias"] = boolf(c.dealias);
  setters["detect.kinetic_cap_factor"] = dbl(c.kinetic_cap_factor);
  setters["detect.amplitude_cap"] = dbl(c.amplitude_cap);
  setters["virial.weight"] = strf(c.virial_weight);
  setters["virial.R"] = dbl(c.virial_R);
  setters["classify.kinetic_ratio"] = dbl(c.classify.kinetic_ratio);
  setters["classify.snorm_decay"] = dbl(c.classify.snorm_decay);
  setters["classify.proxy_tail"] = dbl(c.classify.proxy_tail_frac);
  setters["classify.growup_factor"] = dbl(c.classify.growup_factor);
  setters["output.dir"] = strf(c.output_dir);
  setters["seed"] = [&c](const std::string& v) {
    long long x;
    if (!parse_int(v, x) || x < 0) return false;
    c.seed = static_cast<std::uint64_t>(x);
    return true;
  };

  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      bad.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      bad.push_back("unknown key `" + key + "`");
      continue;
    }
    if (!it->second(value))
      bad.push_back("key `" + key + "`: cannot parse value `" + value + "`");
  }
  if (!bad.empty()) throw config_error(std::move(bad));
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error({"cannot open config file: " + path});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace inls
