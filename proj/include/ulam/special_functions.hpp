#pragma once

namespace ulam {

/// Euler–Mascheroni constant to full double precision; cross-validated against
/// digamma(1) by the test suite.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Logarithmic derivative of the gamma function on (0, inf).
/// Satisfies digamma(x + 1) = digamma(x) + 1/x and digamma(1) = -kEulerGamma.
/// Absolute error below 1e-12 on [0.1, 100]. Throws std::domain_error for x <= 0.
double digamma(double x);

/// Natural log of the gamma function on (0, inf).
/// Satisfies log_gamma(x + 1) = log_gamma(x) + ln x and log_gamma(1) = 0.
/// Absolute error below 1e-12 on [0.1, 100]. Throws std::domain_error for x <= 0.
double log_gamma(double x);

}  // namespace ulam
