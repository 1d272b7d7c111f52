#include "urnnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "urnnet/csv.hpp"
#include "urnnet/errors.hpp"
#include "urnnet/special_functions.hpp"

namespace urnnet {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kGradientTolerance = 1e-9;
constexpr double kMaxCondition = 1e12;

std::vector<double> clamped(std::span<const double> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (double x : samples) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
      throw DomainError("beta samples must lie in [0,1], got " + format_real(x));
    }
    out.push_back(std::clamp(x, kSampleClamp, 1.0 - kSampleClamp));
  }
  return out;
}

double mean_of(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

double variance_mle(std::span<const double> xs, double mean) {
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size());
}

// Root in `a` of mean_log + psi(a + other) - psi(a) = 0. The left side is
// strictly decreasing in a, from +inf at 0+ to mean_log < 0 at infinity.
double solve_coordinate(double mean_log, double other, double start) {
  auto h = [&](double v) { return mean_log - digamma(v) + digamma(v + other); };
  double lo = start;
  double hi = start;
  while (h(lo) < 0.0 && lo > 1e-300) lo *= 0.5;
  while (h(hi) > 0.0 && hi < 1e300) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BetaSufficient beta_sufficient(std::span<const double> samples) {
  BetaSufficient s;
  s.n = samples.size();
  for (double x : samples) {
    const double c = std::clamp(x, kSampleClamp, 1.0 - kSampleClamp);
    s.mean_log_x += std::log(c);
    s.mean_log_1mx += std::log1p(-c);
  }
  if (s.n > 0) {
    s.mean_log_x /= static_cast<double>(s.n);
    s.mean_log_1mx /= static_cast<double>(s.n);
  }
  return s;
}

double beta_log_likelihood(const BetaSufficient& s, double a, double b) {
  return static_cast<double>(s.n) *
         ((a - 1.0) * s.mean_log_x + (b - 1.0) * s.mean_log_1mx - log_beta_fn(a, b));
}

std::array<double, 2> beta_score(const BetaSufficient& s, double a, double b) {
  const double n = static_cast<double>(s.n);
  const double psi_ab = digamma(a + b);
  return {n * (s.mean_log_x - digamma(a) + psi_ab), n * (s.mean_log_1mx - digamma(b) + psi_ab)};
}

std::array<double, 2> beta_method_of_moments(std::span<const double> samples) {
  const double m = mean_of(samples);
  const double v = variance_mle(samples, m);
  if (!(v > 0.0) || v >= m * (1.0 - m)) return {1.0, 1.0};
  const double common = m * (1.0 - m) / v - 1.0;
  return {m * common, (1.0 - m) * common};
}

BetaFit fit_beta_mle(std::span<const double> samples) {
  if (samples.size() < 10) {
    throw InsufficientSamples("beta fit needs at least 10 samples, got " + std::to_string(samples.size()));
  }
  const auto xs = clamped(samples);
  if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
    throw FitFailed("beta fit: all " + std::to_string(xs.size()) + " samples equal " + format_real(xs.front()) +
                    " after clamping; the likelihood has no maximum");
  }
  const auto stats = beta_sufficient(xs);
  const double n = static_cast<double>(stats.n);

  auto [a, b] = beta_method_of_moments(xs);
  BetaFit fit;
  double ll = beta_log_likelihood(stats, a, b);
  for (int it = 0; it <= kMaxIterations; ++it) {
    const auto g = beta_score(stats, a, b);
    fit.gradient_norm = std::max(std::abs(g[0]), std::abs(g[1]));
    fit.iterations = it;
    if (fit.gradient_norm < kGradientTolerance) {
      fit.converged = true;
      break;
    }
    if (it == kMaxIterations) break;

    // Negative Hessian, positive definite for a, b > 0.
    const double tri_ab = trigamma(a + b);
    const double h11 = n * (trigamma(a) - tri_ab);
    const double h22 = n * (trigamma(b) - tri_ab);
    const double h12 = -n * tri_ab;
    const double det = h11 * h22 - h12 * h12;
    const double half_trace = 0.5 * (h11 + h22);
    const double disc = std::sqrt(std::max(0.0, half_trace * half_trace - det));
    const double lambda_min = half_trace - disc;
    const double lambda_max = half_trace + disc;

    if (!(lambda_min > 0.0) || lambda_max / lambda_min > kMaxCondition) {
      a = solve_coordinate(stats.mean_log_x, b, a);
      b = solve_coordinate(stats.mean_log_1mx, a, b);
      ll = beta_log_likelihood(stats, a, b);
      continue;
    }

    const double da = (h22 * g[0] - h12 * g[1]) / det;
    const double db = (h11 * g[1] - h12 * g[0]) / det;
    double scale = 1.0;
    double next_a = a + da;
    double next_b = b + db;
    double next_ll = 0.0;
    for (int halving = 0; halving < 60; ++halving) {
      next_a = a + scale * da;
      next_b = b + scale * db;
      if (next_a > 0.0 && next_b > 0.0) {
        next_ll = beta_log_likelihood(stats, next_a, next_b);
        if (next_ll >= ll - 1e-12 * (1.0 + std::abs(ll))) break;
      }
      scale *= 0.5;
    }
    if (!(next_a > 0.0 && next_b > 0.0)) break;
    a = next_a;
    b = next_b;
    ll = next_ll;
  }
  fit.a = a;
  fit.b = b;
  fit.log_likelihood = beta_log_likelihood(stats, a, b);
  return fit;
}

NormalFit fit_normal(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw InsufficientSamples("normal fit needs at least 2 samples, got " + std::to_string(samples.size()));
  }
  NormalFit fit;
  fit.mu = mean_of(samples);
  fit.sigma = std::sqrt(variance_mle(samples, fit.mu));
  fit.degenerate = fit.sigma == 0.0;
  return fit;
}

double normal_log_likelihood(std::span<const double> samples, const NormalFit& fit) {
  if (fit.degenerate) return std::numeric_limits<double>::infinity();
  double acc = 0.0;
  const double var = fit.sigma * fit.sigma;
  for (double x : samples) acc += (x - fit.mu) * (x - fit.mu);
  const double n = static_cast<double>(samples.size());
  return -0.5 * n * std::log(2.0 * std::numbers::pi * var) - acc / (2.0 * var);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InsufficientSamples("KS statistic needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

FitSummary fit_and_compare(std::span<const double> samples) {
  FitSummary out;
  out.beta = fit_beta_mle(samples);
  out.normal = fit_normal(samples);
  const double a = out.beta.a;
  const double b = out.beta.b;
  out.gof.ks_beta = ks_statistic(samples, [a, b](double x) {
    return regularized_incomplete_beta(std::clamp(x, 0.0, 1.0), a, b);
  });
  const auto normal = out.normal;
  out.gof.ks_normal =
      ks_statistic(samples, [normal](double x) { return normal_cdf(x, normal.mu, normal.sigma); });
  out.gof.loglik_beta = out.beta.log_likelihood;
  out.gof.loglik_normal = normal_log_likelihood(samples, out.normal);
  out.gof.aic_beta = 2.0 * 2 - 2.0 * out.gof.loglik_beta;
  out.gof.aic_normal = 2.0 * 2 - 2.0 * out.gof.loglik_normal;
  return out;
}

void write_fit_json(std::ostream& out, const FitSummary& fit, std::size_t n) {
  nlohmann::ordered_json doc;
  doc["beta"] = {{"a", fit.beta.a},
                 {"b", fit.beta.b},
                 {"loglik", fit.gof.loglik_beta},
                 {"ks", fit.gof.ks_beta},
                 {"aic", fit.gof.aic_beta},
                 {"converged", fit.beta.converged},
                 {"iterations", fit.beta.iterations}};
  doc["normal"] = {{"mu", fit.normal.mu},
                   {"sigma", fit.normal.sigma},
                   {"loglik", fit.gof.loglik_normal},
                   {"ks", fit.gof.ks_normal},
                   {"aic", fit.gof.aic_normal}};
  doc["n"] = n;
  out << doc.dump(2) << '\n';
}

ConjectureReport conjecture_report(const std::map<double, std::vector<double>>& sweeps) {
  if (sweeps.size() < 2) {
    throw InsufficientSamples("conjecture report needs at least 2 alpha levels, got " +
                              std::to_string(sweeps.size()));
  }
  ConjectureReport report;
  for (const auto& [alpha, samples] : sweeps) {
    if (samples.size() < kMinReportSamples) {
      throw InsufficientSamples("alpha " + format_real(alpha) + " has " + std::to_string(samples.size()) +
                                " samples, need " + std::to_string(kMinReportSamples));
    }
    const auto fit = fit_beta_mle(samples);
    ConjectureRow row;
    row.alpha = alpha;
    row.a_hat = fit.a;
    row.b_hat = fit.b;
    row.a_plus_b = fit.a + fit.b;
    row.empirical_mean = mean_of(samples);
    row.fitted_mean = fit.mean();
    row.converged = fit.converged;
    report.rows.push_back(row);
  }

  double lo = report.rows.front().a_plus_b;
  double hi = lo;
  double sum = 0.0;
  for (const auto& row : report.rows) {
    lo = std::min(lo, row.a_plus_b);
    hi = std::max(hi, row.a_plus_b);
    sum += row.a_plus_b;
    report.max_abs_empirical_mean_dev =
        std::max(report.max_abs_empirical_mean_dev, std::abs(row.empirical_mean - row.alpha));
    report.max_abs_fitted_mean_dev =
        std::max(report.max_abs_fitted_mean_dev, std::abs(row.fitted_mean - row.alpha));
  }
  report.max_relative_spread_ab = (hi - lo) / (sum / static_cast<double>(report.rows.size()));
  return report;
}

void write_report_csv(std::ostream& out, const ConjectureReport& report) {
  out << "alpha,a_hat,b_hat,a_plus_b,empirical_mean\n";
  for (const auto& row : report.rows) {
    out << format_real(row.alpha) << ',' << format_real(row.a_hat) << ',' << format_real(row.b_hat) << ','
        << format_real(row.a_plus_b) << ',' << format_real(row.empirical_mean) << '\n';
  }
}

}  // namespace urnnet
