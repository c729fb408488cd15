#pragma once

#include <functional>
#include <string>

#include "ulam/equation.hpp"

namespace ulam {

/// Shape of the domain self-map for the configurable equations.
struct PhiSpec {
  enum class Kind { shift, scale };
  Kind kind = Kind::shift;
  double amount = 1.0;
};

std::function<double(double)> phi_function(const PhiSpec&);
std::string phi_description(const PhiSpec&);

/// A named equation together with its reference exact solution.
struct NamedProblem {
  EquationInstance instance;
  ApproximateSolution reference;
  std::string equation;
  std::string group;
};

/// f(x+1) = f(x) + 1/x on (0, inf) over the additive reals; reference: digamma.
NamedProblem digamma_problem();

/// f(x+1) = x·f(x) on (0, inf) over the multiplicative positive reals;
/// reference: the gamma function (log carrier).
NamedProblem gamma_problem();

/// f(phi(x)) = f(x) + c on (0, inf) over the additive reals.
/// Reference: c·x/h for phi = shift h, c·ln(x)/ln(a) for phi = scale a.
NamedProblem abel_problem(double c, const PhiSpec& phi);

/// f(phi(x)) = c·f(x), c > 0, on (0, inf) over the multiplicative positive
/// reals. Reference (log carrier): ln(c)·x/h for shift h, ln(c)·ln(x)/ln(a)
/// for scale a.
NamedProblem schroeder_problem(double c, const PhiSpec& phi);

}  // namespace ulam
