#pragma once

#include <string>

#include "ulam/config.hpp"
#include "ulam/stabilizer.hpp"

namespace ulam {

/// A fully-resolved batch job: the equation, the candidate solution built from
/// the configured reference + perturbation, and the budget.
struct Job {
  EquationInstance instance;
  ApproximateSolution f;
  PerturbationBudget budget;
  EngineConfig engine;
  bool word_carrier = false;
  std::string equation;
  std::string group;
};

/// Resolves a parsed config into a runnable job; validates that every sample
/// point is inside the equation's domain. Throws ConfigError.
Job build_job(const RunConfig&);

/// One certificate row, already serialized field by field.
struct CertificateRow {
  double x = 0.0;
  std::string f_repr;
  std::string f0_repr;
  std::string dist_repr;
  std::string phi_hat_repr;
  std::string strategy;
  long long iterations = 0;
  std::string last_step_repr;
  std::string residual_repr;
  std::string status;
  bool ok = false;  // counts toward exit 0
};

CertificateRow run_point(const Job&, double x, double tol, RunMode mode);

struct RunOutput {
  std::string csv;      // header + one row per configured point, in order
  std::string summary;  // human-readable digest
  int exit_code = 0;    // 0 all rows good, 2 otherwise
};

/// Executes the whole batch. Points may be processed concurrently
/// (config.threads); rows are emitted in config order and the CSV bytes are
/// independent of the thread count.
RunOutput run(const RunConfig&);

/// Exact CSV header emitted by run().
inline constexpr const char* kCsvHeader =
    "x,f,f0,dist,phi_hat,strategy,iterations,last_step,residual,status";

}  // namespace ulam
