#include "urnnet/montecarlo.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <omp.h>

#include <json.hpp>

#include "urnnet/csv.hpp"
#include "urnnet/errors.hpp"

namespace urnnet {

void RunConfig::validate() const {
  if (!graph) throw InvalidParameter("run config: graph is not set");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("run config: alpha must lie in [0,1], got " + format_real(alpha));
  }
  if (horizon < 1) throw InvalidParameter("run config: horizon must be >= 1");
  if (replicas < 1) throw InvalidParameter("run config: replicas must be >= 1");
  if (record_stride < 1) throw InvalidParameter("run config: record_stride must be >= 1");
  if (stop_spread && !(*stop_spread >= 0.0)) {
    throw InvalidParameter("run config: stop_spread must be >= 0");
  }
  if (!initial_colors.empty() && initial_colors.size() != static_cast<std::size_t>(graph->size())) {
    throw InvalidParameter("run config: initial_colors has " + std::to_string(initial_colors.size()) +
                           " entries for " + std::to_string(graph->size()) + " agents");
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replica) noexcept {
  return splitmix64_mix(master ^ splitmix64_mix(replica + 0x9e3779b97f4a7c15ULL));
}

ReplicaResult run_replica(const RunConfig& cfg, int replica) {
  const Graph& g = *cfg.graph;
  Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(replica)));
  UrnState state = cfg.initial_colors.empty() ? init_signals(g, cfg.alpha, rng)
                                              : init_fixed(g, cfg.initial_colors);

  ReplicaResult result;
  result.replica = replica;
  for (auto w : state.white) result.init_white_count += static_cast<int>(w);

  auto record = [&] {
    result.samples.push_back({state.t, spread(state), degree_weighted_mean(state, g)});
  };
  record();
  bool stopped = cfg.stop_spread && result.samples.back().spread < *cfg.stop_spread;

  DrawVector draws;
  while (!stopped && state.t < cfg.horizon) {
    step(state, g, rng, draws);
    const bool at_stride = state.t % cfg.record_stride == 0;
    if (at_stride || state.t == cfg.horizon) {
      record();
      stopped = at_stride && cfg.stop_spread && result.samples.back().spread < *cfg.stop_spread;
    }
  }

  const auto z = proportions(state);
  double mean = 0.0;
  for (double v : z) mean += v;
  result.mean_z = mean / static_cast<double>(z.size());
  result.weighted_mean_z = degree_weighted_mean(state, g);
  result.spread = spread(state);
  result.limit_estimate = result.weighted_mean_z;
  result.steps_run = state.t;
  return result;
}

std::vector<ReplicaResult> run_sweep_serial(const RunConfig& cfg) {
  cfg.validate();
  std::vector<ReplicaResult> results;
  results.reserve(static_cast<std::size_t>(cfg.replicas));
  for (int r = 0; r < cfg.replicas; ++r) results.push_back(run_replica(cfg, r));
  return results;
}

std::vector<ReplicaResult> run_sweep(const RunConfig& cfg, int threads) {
  cfg.validate();
  std::vector<ReplicaResult> results(static_cast<std::size_t>(cfg.replicas));
  const int team = threads > 0 ? threads : omp_get_max_threads();
  // Each slot is written by exactly one iteration; the seed depends on the
  // replica index only, so scheduling cannot change any result.
#pragma omp parallel for schedule(dynamic, 4) num_threads(team)
  for (int r = 0; r < cfg.replicas; ++r) {
    results[static_cast<std::size_t>(r)] = run_replica(cfg, r);
  }
  return results;
}

void write_samples_csv(std::ostream& out, double alpha, std::span<const ReplicaResult> results) {
  out << "replica,alpha,limit_estimate,spread_T,init_white_count\n";
  const std::string a = format_real(alpha);
  for (const auto& r : results) {
    out << r.replica << ',' << a << ',' << format_real(r.correct_belief()) << ','
        << format_real(r.spread) << ',' << r.init_white_count << '\n';
  }
}

// ---------------------------------------------------------------------------

double noise_bound(const Graph& g, int agent, std::int64_t t) {
  const double td = static_cast<double>(t);
  return (1.0 + g.min_degree() * td) / (1.0 + g.degree(agent) * td) * g.degree(agent);
}

std::vector<double> noise_term(const Graph& g, const UrnState& before, const DrawVector& draws) {
  const auto z = proportions(before);
  const double td = static_cast<double>(before.t);
  const double num = 1.0 + g.min_degree() * td;
  std::vector<double> u(z.size());
  for (int i = 0; i < g.size(); ++i) {
    double drawn = 0.0;
    double expected = 0.0;
    for (int j : g.neighbors(i)) {
      drawn += draws[static_cast<std::size_t>(j)];
      expected += z[static_cast<std::size_t>(j)];
    }
    u[static_cast<std::size_t>(i)] = num / (1.0 + g.degree(i) * td) * (drawn - expected);
  }
  return u;
}

NoiseAccumulator::NoiseAccumulator(const Graph& g)
    : graph_(&g),
      mean_(static_cast<std::size_t>(g.size()), 0.0),
      m2_(static_cast<std::size_t>(g.size()), 0.0) {}

void NoiseAccumulator::observe(const UrnState& before, const DrawVector& draws) {
  const auto u = noise_term(*graph_, before, draws);
  ++steps_;
  const double gamma = 1.0 / (1.0 + graph_->min_degree() * static_cast<double>(before.t + 1));
  double square = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double delta = u[i] - mean_[i];
    mean_[i] += delta / static_cast<double>(steps_);
    m2_[i] += delta * (u[i] - mean_[i]);

    const double bound = noise_bound(*graph_, static_cast<int>(i), before.t);
    const double ratio = std::abs(u[i]) / bound;
    max_ratio_ = std::max(max_ratio_, ratio);
    if (std::abs(u[i]) > bound * (1.0 + 1e-12)) ++violations_;
    square += gamma * u[i] * gamma * u[i];
  }
  const auto window = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(before.t) + 1) - 1);
  if (window >= window_sum_.size()) {
    window_sum_.resize(window + 1, 0.0);
    window_count_.resize(window + 1, 0);
  }
  window_sum_[window] += square / static_cast<double>(u.size());
  ++window_count_[window];
}

NoiseStatistics NoiseAccumulator::summary() const {
  NoiseStatistics s;
  s.steps = steps_;
  s.mean = mean_;
  s.stddev.resize(m2_.size());
  for (std::size_t i = 0; i < m2_.size(); ++i) {
    s.stddev[i] = steps_ > 1 ? std::sqrt(m2_[i] / static_cast<double>(steps_ - 1)) : 0.0;
  }
  s.max_bound_ratio = max_ratio_;
  s.bound_violations = violations_;
  for (std::size_t k = 0; k < window_sum_.size(); ++k) {
    if (window_count_[k] == 0) continue;
    const auto begin = (std::int64_t{1} << k) - 1;
    s.decay.push_back({begin, 2 * begin + 1, window_sum_[k] / static_cast<double>(window_count_[k])});
  }
  return s;
}

NoiseStatistics noise_diagnostics(const Graph& g, UrnState init, std::int64_t steps, Rng& rng) {
  validate(init, g);
  NoiseAccumulator acc(g);
  DrawVector draws;
  for (std::int64_t s = 0; s < steps; ++s) {
    const UrnState before = init;
    step(init, g, rng, draws);
    acc.observe(before, draws);
  }
  return acc.summary();
}

// ---------------------------------------------------------------------------

SweepConfig parse_sweep_config(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("config: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("config: top level must be an object");

  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!doc.contains(key)) throw InvalidInput(std::string("config: missing required field '") + key + "'");
    return doc.at(key);
  };
  auto fail = [](const char* key, const std::string& what) {
    throw InvalidInput(std::string("config: field '") + key + "' " + what);
  };
  auto integer = [&](const char* key, const nlohmann::json& v, long long minimum) {
    if (!v.is_number_integer()) fail(key, "must be an integer");
    const auto x = v.get<long long>();
    if (x < minimum) fail(key, "must be >= " + std::to_string(minimum));
    return x;
  };

  SweepConfig cfg;
  const auto& graph = require("graph");
  if (!graph.is_string()) fail("graph", "must be a string such as \"kreg:100:10\"");
  cfg.graph_spec = graph.get<std::string>();

  const auto& alphas = require("alphas");
  if (!alphas.is_array() || alphas.empty()) fail("alphas", "must be a non-empty array");
  for (const auto& a : alphas) {
    if (!a.is_number()) fail("alphas", "must contain numbers");
    const double v = a.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) fail("alphas", "entries must lie in [0,1]");
    cfg.alphas.push_back(v);
  }

  cfg.horizon = integer("horizon", require("horizon"), 1);
  cfg.replicas = static_cast<int>(integer("replicas", require("replicas"), 1));

  const auto& seed = require("master_seed");
  if (seed.is_number_unsigned()) {
    cfg.master_seed = seed.get<std::uint64_t>();
  } else if (seed.is_number_integer() && seed.get<long long>() >= 0) {
    cfg.master_seed = static_cast<std::uint64_t>(seed.get<long long>());
  } else {
    fail("master_seed", "must be a non-negative integer");
  }

  cfg.record_stride = doc.contains("record_stride") ? integer("record_stride", doc.at("record_stride"), 1)
                                                    : cfg.horizon;
  if (doc.contains("stop_spread") && !doc.at("stop_spread").is_null()) {
    const auto& v = doc.at("stop_spread");
    if (!v.is_number() || v.get<double>() < 0.0) fail("stop_spread", "must be a number >= 0");
    cfg.stop_spread = v.get<double>();
  }
  if (doc.contains("initial_colors")) {
    const auto& v = doc.at("initial_colors");
    if (!v.is_string()) fail("initial_colors", "must be a string such as \"W,B,W\"");
    try {
      cfg.initial_colors = parse_colors(v.get<std::string>());
    } catch (const InvalidInput& e) {
      fail("initial_colors", e.what());
    }
  }
  if (doc.contains("output_dir")) {
    const auto& v = doc.at("output_dir");
    if (!v.is_string()) fail("output_dir", "must be a string");
    cfg.output_dir = v.get<std::string>();
  }
  return cfg;
}

RunConfig level_config(const SweepConfig& sweep, std::shared_ptr<const Graph> graph, std::size_t level) {
  RunConfig cfg;
  cfg.graph = std::move(graph);
  cfg.graph_spec = sweep.graph_spec;
  cfg.alpha = sweep.alphas.at(level);
  cfg.horizon = sweep.horizon;
  cfg.replicas = sweep.replicas;
  cfg.master_seed = derive_seed(sweep.master_seed, level);
  cfg.record_stride = sweep.record_stride > 0 ? sweep.record_stride : sweep.horizon;
  cfg.stop_spread = sweep.stop_spread;
  cfg.initial_colors = sweep.initial_colors;
  return cfg;
}

std::string samples_file_name(double alpha) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "samples_alpha_%g.csv", alpha);
  return buf;
}

}  // namespace urnnet
