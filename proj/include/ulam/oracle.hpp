#pragma once

#include <vector>

#include "ulam/equation.hpp"

namespace ulam {

/// Result of the brute-force reference limit. residual_history holds the
/// literal step distances between consecutive pull-backs over the walked range.
struct OracleResult {
  Element value;
  long long depth = 0;
  std::vector<double> residual_history;
  bool max_depth_exceeded = false;
};

/// Independent reference limit of the pull-back sequence: doubling schedule,
/// value-delta stopping (three consecutive doublings moving the value by at
/// most tol/10). Deliberately shares no code with the certified tail
/// machinery; for the real-carried groups the coefficient carriers are
/// accumulated with classic Kahan compensation. Heuristic by design —
/// soundness lives in the stabilizer, this is the cross-check.
OracleResult brute_force_limit(const EquationInstance&, const ApproximateSolution& f,
                               double x, double tol, long long max_depth = 1'000'000);

/// Exact specialization when the defect vanishes from support_depth on along
/// the orbit of x: the pull-back sequence is constant beyond the support, so
/// its value at support_depth is the limit. The vanishing is checked over
/// verify_window extra orbit steps; a nonzero later defect is a precondition
/// violation (std::invalid_argument).
Element finite_orbit_exact(const EquationInstance&, const ApproximateSolution& f, double x,
                           long long support_depth, long long verify_window = 16);

}  // namespace ulam
