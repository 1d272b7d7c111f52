#include "urnnet/meanfield_ode.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "urnnet/csv.hpp"
#include "urnnet/errors.hpp"

namespace urnnet {

namespace {

void check_dimension(const Graph& g, std::span<const double> z) {
  if (z.size() != static_cast<std::size_t>(g.size())) {
    throw InvalidParameter("state has dimension " + std::to_string(z.size()) + ", graph has " +
                           std::to_string(g.size()) + " agents");
  }
}

// out_i = scale_i * (sum_{j~i} z_j - d_i z_i)
template <class Scale>
void scaled_laplacian_flow(const Graph& g, std::span<const double> z, Scale scale,
                           std::span<double> out) {
  for (int i = 0; i < g.size(); ++i) {
    double acc = 0.0;
    for (int j : g.neighbors(i)) acc += z[static_cast<std::size_t>(j)];
    const auto k = static_cast<std::size_t>(i);
    out[k] = scale(i) * (acc - g.degree(i) * z[k]);
  }
}

}  // namespace

std::vector<double> fbar(const Graph& g, std::span<const double> z) {
  check_dimension(g, z);
  std::vector<double> out(z.size());
  const double d = g.min_degree();
  scaled_laplacian_flow(g, z, [&](int i) { return d / g.degree(i); }, out);
  return out;
}

std::vector<double> ftime(const Graph& g, std::span<const double> z, std::int64_t t) {
  check_dimension(g, z);
  if (t < 0) throw InvalidParameter("time index must be >= 0");
  std::vector<double> out(z.size());
  const double td = static_cast<double>(t);
  const double num = 1.0 + g.min_degree() * td;
  scaled_laplacian_flow(g, z, [&](int i) { return num / (1.0 + g.degree(i) * td); }, out);
  return out;
}

double gamma_weight(std::int64_t t, const Graph& g) {
  if (t < 0) throw InvalidParameter("time index must be >= 0");
  return 1.0 / (1.0 + static_cast<double>(g.min_degree()) * static_cast<double>(t + 1));
}

double default_step_size(const Graph& g) { return 0.01 / g.max_degree(); }

OdeTrajectory integrate(const Graph& g, std::span<const double> z0, double step_size,
                        double horizon, std::int64_t record_stride) {
  check_dimension(g, z0);
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw InvalidParameter("step size must be positive");
  }
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw InvalidParameter("horizon must be finite and >= 0");
  }
  if (record_stride < 1) throw InvalidParameter("record stride must be >= 1");
  for (double v : z0) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidParameter("initial state must lie in [0,1]^n");
  }

  const auto n = z0.size();
  const double d = g.min_degree();
  auto field = [&](std::span<const double> z, std::span<double> out) {
    scaled_laplacian_flow(g, z, [&](int i) { return d / g.degree(i); }, out);
  };

  OdeTrajectory traj;
  std::vector<double> z(z0.begin(), z0.end());
  traj.times.push_back(0.0);
  traj.states.push_back(z);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  const auto steps = static_cast<std::int64_t>(std::ceil(horizon / step_size - 1e-9));
  for (std::int64_t s = 1; s <= steps; ++s) {
    const double t_prev = static_cast<double>(s - 1) * step_size;
    const double h = std::min(step_size, horizon - t_prev);
    field(z, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
    field(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
    field(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + h * k3[i];
    field(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      double v = z[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(v)) {
        throw IntegrationDiverged("non-finite state at step " + std::to_string(s));
      }
      if (v < -kClipTolerance || v > 1.0 + kClipTolerance) {
        throw IntegrationDiverged("state left [0,1] by more than 1e-9 at step " + std::to_string(s) +
                                  " (z_" + std::to_string(i) + " = " + format_real(v) + ")");
      }
      z[i] = std::clamp(v, 0.0, 1.0);
    }
    if (s % record_stride == 0 || s == steps) {
      traj.times.push_back(t_prev + h);
      traj.states.push_back(z);
    }
  }
  return traj;
}

double degree_weighted_sum(const Graph& g, std::span<const double> z) {
  check_dimension(g, z);
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) acc += g.degree(static_cast<int>(i)) * z[i];
  return acc;
}

double predicted_consensus(const Graph& g, std::span<const double> z0) {
  return degree_weighted_sum(g, z0) / static_cast<double>(g.degree_sum());
}

void write_ode_csv(std::ostream& out, const OdeTrajectory& trajectory) {
  out << 't';
  const std::size_t n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  for (std::size_t i = 0; i < n; ++i) out << ",z_" << i;
  out << '\n';
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << format_real(trajectory.times[k]);
    for (double v : trajectory.states[k]) out << ',' << format_real(v);
    out << '\n';
  }
}

}  // namespace urnnet
