#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "urnnet/graph.hpp"
#include "urnnet/rng.hpp"
#include "urnnet/urn_dynamics.hpp"

namespace urnnet::testing {

// Upper 0.001 quantile of the chi-square law with 7 degrees of freedom
// (scipy.stats.chi2.ppf(0.999, 7)).
inline constexpr double kChiSquare7At0001 = 24.321886347856854;

// Three agents in line after the first (forced) step from signals W,B,W:
// end urns {1B,1W}, middle urn {1B,2W}.
inline UrnState line_state_at_t1() {
  UrnState s;
  s.t = 1;
  s.black = {1, 1, 1};
  s.white = {1, 2, 1};
  return s;
}

inline double chi_square(const std::vector<double>& observed, const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double diff = observed[k] - expected[k];
    stat += diff * diff / expected[k];
  }
  return stat;
}

inline std::uint64_t draw_mask(const DrawVector& x) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mask |= static_cast<std::uint64_t>(x[i] != 0) << i;
  return mask;
}

// Beta(a, b) draws as G_a / (G_a + G_b) with independent gamma variates.
inline std::vector<double> beta_sample(double a, double b, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) {
    const double u = ga(rng);
    const double v = gb(rng);
    x = u / (u + v);
  }
  return out;
}

}  // namespace urnnet::testing
