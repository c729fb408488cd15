#include "ulam/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace ulam {

namespace {

// Arguments are shifted upward past this point before the asymptotic series.
constexpr double kShiftThreshold = 10.0;

// B_{2k} / (2k), k = 1..8
constexpr double kPsiCoeff[] = {
    1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0,  1.0 / 12.0,  -3617.0 / 8160.0,
};

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr double kStirlingCoeff[] = {
    1.0 / 12.0,   -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

}  // namespace

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma requires x > 0");
  double shift = 0.0;
  while (x < kShiftThreshold) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv2;
  for (double c : kPsiCoeff) {
    const double term = c * power;
    series += term;
    if (std::abs(term) < 1e-16) break;
    power *= inv2;
  }
  return std::log(x) - 0.5 * inv - series + shift;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma requires x > 0");
  double shift = 0.0;
  while (x < kShiftThreshold) {
    shift -= std::log(x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double c : kStirlingCoeff) {
    const double term = c * power;
    series += term;
    if (std::abs(term) < 1e-16) break;
    power *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + series + shift;
}

}  // namespace ulam
