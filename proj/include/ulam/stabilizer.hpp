#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ulam/equation.hpp"

namespace ulam {

enum class TailStrategy { none, closed_form, zero_tail, geometric_ratio };
enum class SolveStatus { converged, diverged, budget_violated, max_iterations };

std::string_view to_string(TailStrategy) noexcept;
std::string_view to_string(SolveStatus) noexcept;

/// Machine-checkable bound on the summed budget along one forward orbit:
/// partial_sum is the compensated sum of the budget over orbit indices
/// [0, depth) and tail_bound majorizes everything from depth on, under the
/// recorded strategy's assumption. total() bounds the whole series.
struct TailCertificate {
  double partial_sum = 0.0;
  double tail_bound = 0.0;
  long long depth = 0;
  TailStrategy strategy = TailStrategy::none;
  std::vector<double> ratio_evidence;  // consecutive decay ratios backing a geometric certificate

  double total() const { return partial_sum + tail_bound; }
};

struct TailOutcome {
  SolveStatus status = SolveStatus::diverged;
  TailCertificate certificate;
  long long scanned = 0;  // orbit points examined
};

/// Certifies an upper bound for the summed budget along the orbit of x with
/// tail_bound <= tol. Strategies, tried in order at each candidate depth:
/// caller-supplied closed form, zero-tail run, geometric decay window.
/// Reports diverged when the budget provably cannot sum (values stop
/// decaying), max_iterations when undecided within the cap.
TailOutcome tail_sum(const EquationInstance&, const PerturbationBudget&, double x,
                     double tol, const EngineConfig& = {});

/// n-step pull-back of f along the orbit of x: the inverse of the n-term
/// ordered coefficient product applied to f at the n-th orbit point.
/// pull_back(_, f, 0, x) = f(x). For exact solutions this is constant in n;
/// in general it converges to the unique nearby exact solution value.
Element pull_back(const EquationInstance&, const ApproximateSolution& f, long long n,
                  double x);

struct StabilizationResult {
  std::optional<Element> value;    // reconstructed exact-solution value at x
  long long iterations = 0;        // pull-back depth at stop (orbit points walked on failure)
  double certified_bound = 0.0;    // certified bound on d(f(x), value)
  double last_step = 0.0;          // d between the final two pull-backs
  SolveStatus status = SolveStatus::diverged;
  TailCertificate tail;
};

/// Reconstructs the exact-solution value at x from the approximate f. On
/// converged: d(value, limit) <= tol via the certified remainder, and
/// d(f(x), value) <= certified_bound. The defect is spot-checked against the
/// budget along the walked orbit; exceeding it (beyond float slack) yields
/// budget_violated rather than an unsound certificate.
StabilizationResult stabilize(const EquationInstance&, const ApproximateSolution& f,
                              const PerturbationBudget&, double x, double tol,
                              const EngineConfig& = {});

struct ResidualReport {
  struct Entry {
    double x;
    double residual;
    bool pass;
  };
  std::vector<Entry> entries;
  bool pass = true;
  double max_residual = 0.0;
};

/// Per-point residual check of a claimed solution.
ResidualReport verify_solution(const EquationInstance&, const ApproximateSolution& f0,
                               std::span<const double> points, double tol);

struct UniquenessGap {
  double gap = 0.0;    // d(f1(x), f2(x))
  double bound = 0.0;  // twice the certified summed budget at the n-th orbit point
  SolveStatus tail_status = SolveStatus::converged;
};

/// Distance between two candidate solutions next to the vanishing diagnostic
/// bound that forces uniqueness as n grows.
UniquenessGap uniqueness_gap(const EquationInstance&, const ApproximateSolution& f1,
                             const ApproximateSolution& f2, const PerturbationBudget&,
                             double x, long long n, double tol = 1e-12,
                             const EngineConfig& = {});

}  // namespace ulam
