#include "ulam/equation.hpp"

#include <cmath>
#include <string>

#include "kahan.hpp"

namespace ulam {

namespace {

void require_valid(const EquationInstance& instance) {
  if (instance.group == nullptr || !instance.phi || !instance.g) {
    throw std::invalid_argument("equation instance needs a group, phi, and g");
  }
}

void require_budget_value(double e) {
  if (std::isnan(e) || e < 0.0) {
    throw std::invalid_argument("budget values must be nonnegative");
  }
}

}  // namespace

DomainViolation::DomainViolation(double point, long long step)
    : std::runtime_error("orbit left the domain at step " + std::to_string(step)),
      point_(point),
      step_(step) {}

Orbit::Orbit(const EquationInstance& instance, double origin) : instance_(&instance) {
  require_valid(instance);
  if (!std::isfinite(origin) || !instance.in_domain(origin)) {
    throw DomainViolation(origin, 0);
  }
  points_.push_back(origin);
}

void Orbit::extend_points(long long k) {
  while (static_cast<long long>(points_.size()) <= k) {
    const double next = instance_->phi(points_.back());
    const auto step = static_cast<long long>(points_.size());
    if (!std::isfinite(next) || !instance_->in_domain(next)) {
      throw DomainViolation(next, step);
    }
    points_.push_back(next);
  }
}

double Orbit::point(long long k) {
  if (k < 0) throw std::invalid_argument("orbit index must be nonnegative");
  extend_points(k);
  return points_[static_cast<std::size_t>(k)];
}

const Element& Orbit::coeff(long long k) {
  if (k < 0) throw std::invalid_argument("orbit index must be nonnegative");
  extend_points(k);
  while (static_cast<long long>(coeffs_.size()) <= k) {
    coeffs_.push_back(instance_->g(points_[coeffs_.size()]));
  }
  return coeffs_[static_cast<std::size_t>(k)];
}

Element Orbit::cocycle(long long n) {
  if (n < 0) throw std::invalid_argument("cocycle length must be nonnegative");
  if (products_.empty()) products_.push_back(instance_->group->identity());
  while (static_cast<long long>(products_.size()) <= n) {
    const auto k = static_cast<long long>(products_.size()) - 1;  // next factor
    products_.push_back(instance_->group->op(coeff(k), products_.back()));
  }
  return products_[static_cast<std::size_t>(n)];
}

double iterate(const EquationInstance& instance, long long k, double x) {
  if (k < 0) throw std::invalid_argument("iterate count must be nonnegative");
  Orbit orbit(instance, x);
  return orbit.point(k);
}

Element cocycle(const EquationInstance& instance, long long n, double x) {
  if (n < 1) throw std::invalid_argument("cocycle length must be positive");
  Orbit orbit(instance, x);
  return orbit.cocycle(n);
}

double defect(const EquationInstance& instance, const ApproximateSolution& f, double x) {
  if (!f) throw std::invalid_argument("approximate solution is empty");
  Orbit orbit(instance, x);
  const Element lhs = f(orbit.point(1));
  const Element rhs = instance.group->op(orbit.coeff(0), f(x));
  return instance.group->dist(lhs, rhs);
}

TelescopingReport telescoping_check(const EquationInstance& instance,
                                    const ApproximateSolution& f,
                                    const PerturbationBudget& budget, long long n, double x,
                                    const EngineConfig& config) {
  if (n < 1) throw std::invalid_argument("telescoping depth must be positive");
  if (!f || !budget.eps) throw std::invalid_argument("f and budget.eps are required");
  Orbit orbit(instance, x);
  const Group& group = *instance.group;

  TelescopingReport report;
  detail::KahanSum rhs;
  for (long long k = 0; k < n; ++k) {
    const double xk = orbit.point(k);
    const double ek = budget.eps(xk);
    require_budget_value(ek);
    rhs.add(ek);
    const double dk = group.dist(f(orbit.point(k + 1)), group.op(orbit.coeff(k), f(xk)));
    if (report.budget_ok && dk > ek + config.budget_slack) {
      report.budget_ok = false;
      report.violation_index = k;
    }
  }
  report.rhs = rhs.value();
  report.lhs = group.dist(f(orbit.point(n)), group.op(orbit.cocycle(n), f(x)));
  report.holds = report.lhs <= report.rhs + config.budget_slack;
  return report;
}

}  // namespace ulam
