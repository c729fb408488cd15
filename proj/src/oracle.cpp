#include "ulam/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ulam {

namespace {

bool real_carried(const Group& g) {
  return &g == &additive_reals() || &g == &mult_positive_reals();
}

}  // namespace

OracleResult brute_force_limit(const EquationInstance& instance, const ApproximateSolution& f,
                               double x, double tol, long long max_depth) {
  if (instance.group == nullptr || !instance.phi || !instance.g) {
    throw std::invalid_argument("equation instance needs a group, phi, and g");
  }
  if (!f) throw std::invalid_argument("approximate solution is empty");
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("tol must be positive and finite");
  }
  if (max_depth < 1) throw std::invalid_argument("max_depth must be positive");

  const Group& group = *instance.group;
  const bool real = real_carried(group);

  std::vector<double> pts;
  std::vector<Element> vals;
  if (!std::isfinite(x) || !instance.in_domain(x)) throw DomainViolation(x, 0);
  pts.push_back(x);
  vals.push_back(f(x));

  // Classic Kahan state for the real carriers; fold state otherwise.
  double carrier_sum = 0.0;
  double carrier_comp = 0.0;
  Element product = group.identity();

  auto extend_to = [&](long long n) {
    while (static_cast<long long>(vals.size()) <= n) {
      const double xprev = pts.back();
      const double xk = instance.phi(xprev);
      if (!std::isfinite(xk) || !instance.in_domain(xk)) {
        throw DomainViolation(xk, static_cast<long long>(pts.size()));
      }
      pts.push_back(xk);
      if (real) {
        const double y = instance.g(xprev).real() - carrier_comp;
        const double t = carrier_sum + y;
        carrier_comp = (t - carrier_sum) - y;
        carrier_sum = t;
        vals.push_back(group.from_carrier(f(xk).real() - carrier_sum));
      } else {
        product = group.op(instance.g(xprev), product);
        vals.push_back(group.op(group.inv(product), f(xk)));
      }
    }
  };

  const double quiet = tol / 10.0;
  long long n = 1;
  int stable = 0;
  bool exceeded = false;
  extend_to(1);
  while (stable < 3) {
    const long long next = n * 2;
    if (next > max_depth) {
      exceeded = true;
      break;
    }
    extend_to(next);
    const double delta = group.dist(vals[static_cast<std::size_t>(next)],
                                    vals[static_cast<std::size_t>(n)]);
    stable = delta <= quiet ? stable + 1 : 0;
    n = next;
  }

  OracleResult out{vals.front(), 1, {}, exceeded};
  out.residual_history.reserve(vals.size() - 1);
  for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
    out.residual_history.push_back(group.dist(vals[k + 1], vals[k]));
  }
  // Earliest depth from which every observed step stays quiet.
  long long depth = 1;
  for (long long j = static_cast<long long>(out.residual_history.size()) - 1; j >= 1; --j) {
    if (out.residual_history[static_cast<std::size_t>(j)] > quiet) {
      depth = j + 1;
      break;
    }
  }
  out.depth = depth;
  out.value = vals[static_cast<std::size_t>(depth)];
  return out;
}

Element finite_orbit_exact(const EquationInstance& instance, const ApproximateSolution& f,
                           double x, long long support_depth, long long verify_window) {
  if (support_depth < 0) throw std::invalid_argument("support_depth must be nonnegative");
  if (verify_window < 1) throw std::invalid_argument("verify_window must be positive");
  if (!f) throw std::invalid_argument("approximate solution is empty");
  Orbit orbit(instance, x);
  const Group& group = *instance.group;
  for (long long k = support_depth; k < support_depth + verify_window; ++k) {
    const double residual =
        group.dist(f(orbit.point(k + 1)), group.op(orbit.coeff(k), f(orbit.point(k))));
    if (residual > group.equality_tolerance()) {
      throw std::invalid_argument("defect is nonzero at orbit index " + std::to_string(k) +
                                  "; the budget support extends beyond support_depth");
    }
  }
  const Element product = orbit.cocycle(support_depth);
  return group.op(group.inv(product), f(orbit.point(support_depth)));
}

}  // namespace ulam
