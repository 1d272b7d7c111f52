#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

namespace urnnet {

// Samples are clamped into [kSampleClamp, 1 - kSampleClamp] before logs.
inline constexpr double kSampleClamp = 1e-9;

struct BetaFit {
  double a = 0.0;
  double b = 0.0;
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  // Infinity norm of the full-sample score at (a, b).
  double gradient_norm = 0.0;

  double mean() const noexcept { return a / (a + b); }
};

struct NormalFit {
  double mu = 0.0;
  double sigma = 0.0;  // MLE (1/n)
  bool degenerate = false;
};

// Sufficient statistics of a clamped sample for the beta likelihood.
struct BetaSufficient {
  std::size_t n = 0;
  double mean_log_x = 0.0;
  double mean_log_1mx = 0.0;
};

BetaSufficient beta_sufficient(std::span<const double> samples);

// Full-sample log-likelihood and score of Beta(a, b).
double beta_log_likelihood(const BetaSufficient& s, double a, double b);
std::array<double, 2> beta_score(const BetaSufficient& s, double a, double b);

// Method-of-moments (a, b); falls back to (1, 1) when the sample variance
// exceeds m(1-m).
std::array<double, 2> beta_method_of_moments(std::span<const double> samples);

// Newton on the score with trigamma Hessian from the method-of-moments
// start, with coordinate bisection when the Hessian condition number
// exceeds 1e12. Stops when the score infinity norm is below 1e-9 or after
// 200 iterations (converged = false). Throws InsufficientSamples (< 10
// samples), DomainError (values outside [0,1] or non-finite) and FitFailed
// (all samples identical after clamping).
BetaFit fit_beta_mle(std::span<const double> samples);

// Throws InsufficientSamples with fewer than 2 samples.
NormalFit fit_normal(std::span<const double> samples);

double normal_log_likelihood(std::span<const double> samples, const NormalFit& fit);

// sup |F_n - F| evaluated on both sides of every sample point.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

struct GofReport {
  double ks_beta = 0.0;
  double ks_normal = 0.0;
  double loglik_beta = 0.0;
  double loglik_normal = 0.0;
  double aic_beta = 0.0;
  double aic_normal = 0.0;
};

struct FitSummary {
  BetaFit beta;
  NormalFit normal;
  GofReport gof;
};

FitSummary fit_and_compare(std::span<const double> samples);

// {"beta": {a, b, loglik, ks, aic, converged, iterations},
//  "normal": {mu, sigma, loglik, ks, aic}, "n": N}
void write_fit_json(std::ostream& out, const FitSummary& fit, std::size_t n);

struct ConjectureRow {
  double alpha = 0.0;
  double a_hat = 0.0;
  double b_hat = 0.0;
  double a_plus_b = 0.0;
  double empirical_mean = 0.0;
  double fitted_mean = 0.0;
  bool converged = false;
};

struct ConjectureReport {
  std::vector<ConjectureRow> rows;  // ascending alpha
  // (max - min) / mean of a_hat + b_hat across levels.
  double max_relative_spread_ab = 0.0;
  double max_abs_empirical_mean_dev = 0.0;
  double max_abs_fitted_mean_dev = 0.0;
};

inline constexpr std::size_t kMinReportSamples = 500;

// Requires >= 2 alpha levels with >= kMinReportSamples samples each.
ConjectureReport conjecture_report(const std::map<double, std::vector<double>>& sweeps);

// alpha,a_hat,b_hat,a_plus_b,empirical_mean
void write_report_csv(std::ostream& out, const ConjectureReport& report);

}  // namespace urnnet
