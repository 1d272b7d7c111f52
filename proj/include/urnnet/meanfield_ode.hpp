#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "urnnet/graph.hpp"

namespace urnnet {

// Mean-field drift: fbar_i(z) = (d/d_i) * (sum_{j~i} z_j - d_i z_i), with
// d the minimum degree. The prefactor scales the whole bracket, so every
// consensus vector c*1 is an equilibrium.
std::vector<double> fbar(const Graph& g, std::span<const double> z);

// Time-dependent drift of the stochastic-approximation recursion:
// f_i^t(z) = ((1 + d t) / (1 + d_i t)) * (sum_{j~i} z_j - d_i z_i).
std::vector<double> ftime(const Graph& g, std::span<const double> z, std::int64_t t);

// Step weight 1 / (1 + d (t + 1)).
double gamma_weight(std::int64_t t, const Graph& g);

struct OdeTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

// 0.01 / max degree.
double default_step_size(const Graph& g);

// Entries may leave [0,1] by at most this much before integration is
// declared diverged; smaller excursions are clipped.
inline constexpr double kClipTolerance = 1e-9;

// Fixed-step classical RK4 for dz/dt = fbar(z) on [0, horizon]. States are
// recorded every `record_stride` steps; the initial and terminal states are
// always recorded. Throws IntegrationDiverged on non-finite values or drift
// beyond kClipTolerance.
OdeTrajectory integrate(const Graph& g, std::span<const double> z0, double step_size,
                        double horizon, std::int64_t record_stride = 1);

// sum_i d_i z0_i / sum_i d_i, the value the flow converges to.
double predicted_consensus(const Graph& g, std::span<const double> z0);

// sum_i d_i z_i, conserved by the flow.
double degree_weighted_sum(const Graph& g, std::span<const double> z);

// CSV: t,z_0,...,z_{n-1}.
void write_ode_csv(std::ostream& out, const OdeTrajectory& trajectory);

}  // namespace urnnet
