#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "urnnet/graph.hpp"
#include "urnnet/rng.hpp"
#include "urnnet/urn_dynamics.hpp"

namespace urnnet {

struct RunConfig {
  std::shared_ptr<const Graph> graph;
  std::string graph_spec;  // label only; `graph` is authoritative
  double alpha = 0.5;
  std::int64_t horizon = 1;
  int replicas = 1;
  std::uint64_t master_seed = 0;
  std::int64_t record_stride = 1;
  // Stop a replica at the first recorded step whose spread is below this.
  std::optional<double> stop_spread;
  // When non-empty every replica starts from these signals instead of
  // drawing them with probability alpha.
  std::vector<Color> initial_colors;

  // Throws InvalidParameter on any violated field constraint.
  void validate() const;
};

struct TrajectorySample {
  std::int64_t t = 0;
  double spread = 0.0;
  double weighted_mean = 0.0;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct ReplicaResult {
  int replica = 0;
  double mean_z = 0.0;
  double weighted_mean_z = 0.0;
  double spread = 0.0;
  // Degree-weighted mean of the terminal black proportions.
  double limit_estimate = 0.0;
  int init_white_count = 0;
  std::int64_t steps_run = 0;
  std::vector<TrajectorySample> samples;

  // Terminal proportion of white (true-state) balls; this is the quantity
  // written to sample files and fitted.
  double correct_belief() const noexcept { return 1.0 - limit_estimate; }

  friend bool operator==(const ReplicaResult&, const ReplicaResult&) = default;
};

// splitmix64_mix(master ^ splitmix64_mix(replica + golden gamma)). For fixed
// replica it is a bijection of master; for fixed master distinct replicas
// give distinct seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replica) noexcept;

ReplicaResult run_replica(const RunConfig& cfg, int replica);

// Serial reference: replicas 0..R-1 in order.
std::vector<ReplicaResult> run_sweep_serial(const RunConfig& cfg);

// OpenMP over replicas. threads <= 0 uses the runtime default. The result
// is identical to run_sweep_serial for any thread count.
std::vector<ReplicaResult> run_sweep(const RunConfig& cfg, int threads = 0);

// Samples CSV: replica,alpha,limit_estimate,spread_T,init_white_count, with
// limit_estimate holding correct_belief().
void write_samples_csv(std::ostream& out, double alpha, std::span<const ReplicaResult> results);

// ---------------------------------------------------------------------------
// Noise term of the stochastic-approximation decomposition,
//   u_i^t = ((1 + d t)/(1 + d_i t)) * (sum_{j~i} X_j^{t+1} - sum_{j~i} Z_j^t),
// which is bounded by the prefactor times d_i and has zero conditional mean.

std::vector<double> noise_term(const Graph& g, const UrnState& before, const DrawVector& draws);
double noise_bound(const Graph& g, int agent, std::int64_t t);

// Mean square of gamma^t u^t (averaged over agents) on [t_begin, t_end).
struct NoiseWindow {
  std::int64_t t_begin = 0;
  std::int64_t t_end = 0;
  double mean_square_step = 0.0;
};

struct NoiseStatistics {
  std::int64_t steps = 0;
  std::vector<double> mean;
  std::vector<double> stddev;
  double max_bound_ratio = 0.0;
  std::int64_t bound_violations = 0;
  std::vector<NoiseWindow> decay;  // dyadic windows [2^k - 1, 2^(k+1) - 1)
};

class NoiseAccumulator {
 public:
  explicit NoiseAccumulator(const Graph& g);

  void observe(const UrnState& before, const DrawVector& draws);
  NoiseStatistics summary() const;

 private:
  const Graph* graph_;
  std::int64_t steps_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
  double max_ratio_ = 0.0;
  std::int64_t violations_ = 0;
  std::vector<double> window_sum_;
  std::vector<std::int64_t> window_count_;
};

// Runs `steps` steps from `init` and accumulates the noise statistics.
NoiseStatistics noise_diagnostics(const Graph& g, UrnState init, std::int64_t steps, Rng& rng);

// ---------------------------------------------------------------------------
// Multi-alpha sweep document (JSON):
//   {
//     "graph": "kreg:100:10",          required, graph mini-language
//     "alphas": [0.3, 0.5, 0.7],        required, each in [0,1]
//     "horizon": 2000,                  required, >= 1
//     "replicas": 2000,                 required, >= 1
//     "master_seed": 42,                required, unsigned 64-bit
//     "record_stride": 100,             optional, default = horizon
//     "stop_spread": 0.01,              optional
//     "initial_colors": "W,B,W",        optional, overrides alpha signals
//     "output_dir": "samples"           optional, default "."
//   }
// Level k (0-based, in list order) runs with master seed
// derive_seed(master_seed, k).
struct SweepConfig {
  std::string graph_spec;
  std::vector<double> alphas;
  std::int64_t horizon = 0;
  int replicas = 0;
  std::uint64_t master_seed = 0;
  std::int64_t record_stride = 0;
  std::optional<double> stop_spread;
  std::vector<Color> initial_colors;
  std::string output_dir = ".";
};

// Throws InvalidInput naming the offending field.
SweepConfig parse_sweep_config(const std::string& json_text);

RunConfig level_config(const SweepConfig& sweep, std::shared_ptr<const Graph> graph, std::size_t level);

std::string samples_file_name(double alpha);

}  // namespace urnnet
