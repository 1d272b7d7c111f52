#pragma once

namespace urnnet {

// Digamma psi(x), x > 0. The recurrence psi(x) = psi(x+1) - 1/x lifts the
// argument to x >= 6, where the asymptotic series is summed through x^-14.
double digamma(double x);

// Trigamma psi'(x), x > 0, by the same shift-and-series scheme.
double trigamma(double x);

// ln Gamma(x), x > 0.
double log_gamma(double x);

// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b), a, b > 0.
double log_beta_fn(double a, double b);

// Regularized incomplete beta I_x(a, b), x in [0,1], a, b > 0. Modified
// Lentz evaluation of the continued fraction, using the reflection
// I_x(a,b) = 1 - I_{1-x}(b,a) when x > (a+1)/(a+b+2).
double regularized_incomplete_beta(double x, double a, double b);

// Standard normal CDF.
double normal_cdf(double x, double mu, double sigma);

}  // namespace urnnet
