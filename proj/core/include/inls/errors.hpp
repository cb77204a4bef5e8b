#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace inls {

// Parameter outside a module contract (dimension range, sign, degenerate denominator).
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class dimension_error : public parameter_error {
 public:
  using parameter_error::parameter_error;
};

class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive quadrature failed to reach the requested error estimate.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double estimate)
      : std::runtime_error(what), estimate(estimate) {}
  double estimate;
};

// |u|^alpha exceeded the overflow guard inside a nonlinear substep.
class blowup_overflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config ingestion failure; carries every violation found, not just the first.
class config_error : public std::runtime_error {
 public:
  explicit config_error(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations(std::move(violations)) {}
  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid config:";
    for (const auto& m : v) {
      s += "\n  - ";
      s += m;
    }
    return s;
  }
};

}  // namespace inls
