#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulam/group.hpp"

namespace ulam {

/// Thrown when a forward orbit leaves the domain guard (or a point map
/// produces a non-finite point).
class DomainViolation : public std::runtime_error {
 public:
  DomainViolation(double point, long long step);
  double point() const noexcept { return point_; }
  long long step() const noexcept { return step_; }

 private:
  double point_;
  long long step_;
};

/// One equation f(phi(x)) = g(x) · f(x): the self-map phi of the domain, the
/// coefficient map g into the group, and an intensional domain guard. The
/// domain is never enumerated; the engine only walks forward orbits of the
/// points it is asked about.
struct EquationInstance {
  const Group* group = nullptr;
  std::function<double(double)> phi;
  std::function<Element(double)> g;
  std::function<bool(double)> domain_guard;  // empty guard = every point admitted
  std::string name;

  bool in_domain(double x) const { return !domain_guard || domain_guard(x); }
};

/// Candidate (approximate) solution: a map from domain points into the group.
using ApproximateSolution = std::function<Element(double)>;

/// Pointwise admissible-error budget and an optional closed-form upper bound
/// on the summed budget along the forward orbit, evaluated at the orbit point.
struct PerturbationBudget {
  std::function<double(double)> eps;
  std::function<double(double)> tail_majorant;  // empty when not available
};

/// Knobs for the orbit scans. All defaults are configuration, not constants;
/// certificates record which assumption was used.
struct EngineConfig {
  long long max_iterations = 1'000'000;
  int ratio_window = 16;        // consecutive decay ratios needed for a geometric certificate
  double ratio_bound = 0.999;   // decay-ratio threshold
  int zero_run = 16;            // consecutive zero budget values for a zero-tail certificate
  int divergence_window = 32;   // consecutive non-decreasing positive values => diverged
  double budget_slack = 1e-12;  // float slack before a defect counts as over budget
};

/// Memoized view of one forward orbit: points, coefficient values, and the
/// running ordered coefficient products. Caching is a per-query optimization
/// only; results are identical with it disabled. Not shared across threads.
class Orbit {
 public:
  Orbit(const EquationInstance& instance, double origin);

  double point(long long k);
  const Element& coeff(long long k);  // g at the k-th orbit point
  Element cocycle(long long n);       // g(x_{n-1}) · ... · g(x_1) · g(x_0)

  const EquationInstance& instance() const { return *instance_; }

 private:
  void extend_points(long long k);

  const EquationInstance* instance_;
  std::vector<double> points_;
  std::vector<Element> coeffs_;
  std::vector<Element> products_;  // products_[n] = cocycle(n), products_[0] = identity
};

/// k-th forward iterate of the domain map; iterate(_, 0, x) = x.
double iterate(const EquationInstance&, long long k, double x);

/// Ordered coefficient product over the first n orbit points, n >= 1.
Element cocycle(const EquationInstance&, long long n, double x);

/// d(f(phi(x)), g(x) · f(x)); zero exactly when f solves the equation at x.
double defect(const EquationInstance&, const ApproximateSolution& f, double x);

struct TelescopingReport {
  bool budget_ok = true;          // defect stayed within budget along the orbit
  long long violation_index = -1; // first orbit index over budget, if any
  bool holds = false;             // the n-step accumulated inequality
  double lhs = 0.0;               // d(f(phi^n(x)), P_n(x) · f(x))
  double rhs = 0.0;               // summed budget over the first n orbit points
};

/// Checks that n pointwise defect bounds telescope into the n-step bound at x.
/// A budget violation is reported as a distinct status, not as inequality
/// failure.
TelescopingReport telescoping_check(const EquationInstance&, const ApproximateSolution& f,
                                    const PerturbationBudget& budget, long long n, double x,
                                    const EngineConfig& config = {});

}  // namespace ulam
