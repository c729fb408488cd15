#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ulam/instances.hpp"

namespace ulam {

enum class RunMode { stabilize, verify, demo };
std::string_view to_string(RunMode) noexcept;

/// Carrier-space shape added on top of the reference solution (or used as the
/// whole candidate for custom equations).
struct PerturbationForm {
  enum class Kind { none, exp_decay, poly_exp, linear, constant, ladder };
  Kind kind = Kind::none;
  double amplitude = 0.0;
  double rate = 0.0;
  std::string word;       // ladder only
  long long depth = 0;    // ladder only
};

struct BudgetForm {
  enum class Kind { auto_defect, zero, constant, exp_decay, poly_exp };
  Kind kind = Kind::auto_defect;
  double amplitude = 0.0;
  double rate = 0.0;
};

/// Coefficient-map shape for custom equations.
struct GForm {
  enum class Kind { unset, constant, reciprocal, coordinate, word };
  Kind kind = Kind::unset;
  double value = 0.0;
  std::string word;
};

struct RunConfig {
  std::string equation;  // digamma | gamma | abel | schroeder | custom
  std::string group;     // resolved group name
  double c = 0.0;
  bool c_set = false;
  PhiSpec phi;
  bool phi_set = false;
  GForm g;
  PerturbationForm perturbation;
  BudgetForm budget;
  std::vector<double> points;
  double tol = 0.0;
  long long max_iterations = 1'000'000;
  RunMode mode = RunMode::stabilize;
  bool mode_set = false;
  int threads = 1;
};

/// Configuration rejection. Parse errors carry the offending line number;
/// semantic errors name the offending key (line number when attributable).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, bool semantic = false)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line),
        semantic_(semantic) {}
  int line() const noexcept { return line_; }
  bool semantic() const noexcept { return semantic_; }

 private:
  int line_;
  bool semantic_;
};

/// Strict parse of the line-based `key = value` document with sections
/// [equation], [perturbation], [run]; `#` starts a comment; unknown sections,
/// unknown keys, and duplicate keys are errors.
RunConfig parse_config(std::string_view text);

/// Bundled flagship scenario for `demo <name>`; currently only "digamma".
RunConfig demo_config(std::string_view equation_name);

}  // namespace ulam
