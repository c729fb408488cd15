#include "ulam/instances.hpp"

#include <cmath>
#include <stdexcept>

#include "ulam/special_functions.hpp"

namespace ulam {

namespace {

bool positive_domain(double x) { return x > 0.0; }

void validate_phi(const PhiSpec& phi) {
  if (!std::isfinite(phi.amount)) throw std::invalid_argument("phi parameter must be finite");
  if (phi.kind == PhiSpec::Kind::shift && phi.amount == 0.0) {
    throw std::invalid_argument("phi = shift 0 is the identity map; choose a nonzero shift");
  }
  if (phi.kind == PhiSpec::Kind::scale && (phi.amount <= 0.0 || phi.amount == 1.0)) {
    throw std::invalid_argument("phi = scale needs a positive factor different from 1");
  }
}

}  // namespace

std::function<double(double)> phi_function(const PhiSpec& phi) {
  validate_phi(phi);
  const double a = phi.amount;
  if (phi.kind == PhiSpec::Kind::shift) return [a](double x) { return x + a; };
  return [a](double x) { return a * x; };
}

std::string phi_description(const PhiSpec& phi) {
  const char* kind = phi.kind == PhiSpec::Kind::shift ? "shift" : "scale";
  return std::string(kind) + " " + std::to_string(phi.amount);
}

NamedProblem digamma_problem() {
  NamedProblem p;
  p.equation = "digamma";
  p.group = "additive-reals";
  const Group& group = additive_reals();
  p.instance.group = &group;
  p.instance.phi = [](double x) { return x + 1.0; };
  p.instance.g = [&group](double x) { return group.from_carrier(1.0 / x); };
  p.instance.domain_guard = positive_domain;
  p.instance.name = "digamma";
  p.reference = [&group](double x) { return group.from_carrier(digamma(x)); };
  return p;
}

NamedProblem gamma_problem() {
  NamedProblem p;
  p.equation = "gamma";
  p.group = "mult-positive-reals";
  const Group& group = mult_positive_reals();
  p.instance.group = &group;
  p.instance.phi = [](double x) { return x + 1.0; };
  p.instance.g = [&group](double x) { return group.from_carrier(std::log(x)); };
  p.instance.domain_guard = positive_domain;
  p.instance.name = "gamma";
  p.reference = [&group](double x) { return group.from_carrier(log_gamma(x)); };
  return p;
}

NamedProblem abel_problem(double c, const PhiSpec& phi) {
  if (!std::isfinite(c)) throw std::invalid_argument("abel constant must be finite");
  validate_phi(phi);
  NamedProblem p;
  p.equation = "abel";
  p.group = "additive-reals";
  const Group& group = additive_reals();
  p.instance.group = &group;
  p.instance.phi = phi_function(phi);
  p.instance.g = [&group, c](double) { return group.from_carrier(c); };
  p.instance.domain_guard = positive_domain;
  p.instance.name = "abel(" + phi_description(phi) + ")";
  if (phi.kind == PhiSpec::Kind::shift) {
    const double h = phi.amount;
    p.reference = [&group, c, h](double x) { return group.from_carrier(c * x / h); };
  } else {
    const double log_a = std::log(phi.amount);
    p.reference = [&group, c, log_a](double x) {
      return group.from_carrier(c * std::log(x) / log_a);
    };
  }
  return p;
}

NamedProblem schroeder_problem(double c, const PhiSpec& phi) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("schroeder constant must be positive");
  }
  validate_phi(phi);
  NamedProblem p;
  p.equation = "schroeder";
  p.group = "mult-positive-reals";
  const Group& group = mult_positive_reals();
  const double log_c = std::log(c);
  p.instance.group = &group;
  p.instance.phi = phi_function(phi);
  p.instance.g = [&group, log_c](double) { return group.from_carrier(log_c); };
  p.instance.domain_guard = positive_domain;
  p.instance.name = "schroeder(" + phi_description(phi) + ")";
  if (phi.kind == PhiSpec::Kind::shift) {
    const double h = phi.amount;
    p.reference = [&group, log_c, h](double x) { return group.from_carrier(log_c * x / h); };
  } else {
    const double log_a = std::log(phi.amount);
    p.reference = [&group, log_c, log_a](double x) {
      return group.from_carrier(log_c * std::log(x) / log_a);
    };
  }
  return p;
}

}  // namespace ulam
