#include "urnnet/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "urnnet/csv.hpp"
#include "urnnet/errors.hpp"
#include "urnnet/exact_oracle.hpp"
#include "urnnet/graph.hpp"
#include "urnnet/meanfield_ode.hpp"
#include "urnnet/montecarlo.hpp"
#include "urnnet/stats.hpp"
#include "urnnet/urn_dynamics.hpp"

namespace urnnet::cli {

namespace {

struct GraphFlags {
  std::string spec;
  std::string file;

  void attach(CLI::App* app) {
    app->add_option("--graph", spec, "star:N | complete:N | kreg:N:K | path:N | file:PATH");
    app->add_option("--graph-file", file, "edge-list file ('n m' header, then 'u v' lines)");
  }

  Graph build() const {
    if (spec.empty() == file.empty()) {
      throw InvalidParameter("exactly one of --graph or --graph-file is required");
    }
    return spec.empty() ? parse_graph_spec("file:" + file) : parse_graph_spec(spec);
  }
};

// Writes to `path` or, when empty, to the fallback stream.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  body(file);
  file.flush();
  if (!file) throw Error("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reinforcing-urn opinion dynamics on networks", "urnnet"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "simulate one trajectory and dump urn counts as CSV");
  GraphFlags sim_graph;
  sim_graph.attach(simulate);
  std::optional<double> sim_alpha;
  std::string sim_init;
  std::int64_t sim_steps = 0;
  std::uint64_t sim_seed = 0;
  std::int64_t sim_stride = 1;
  std::string sim_out;
  simulate->add_option("--alpha", sim_alpha, "probability of a true-state signal");
  simulate->add_option("--init", sim_init, "fixed initial signals, e.g. W,B,W");
  simulate->add_option("--steps", sim_steps, "number of steps")->required()->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", sim_seed, "RNG seed")->required();
  simulate->add_option("--stride", sim_stride, "record every k-th step")->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim_out, "output CSV (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run replicas for every alpha in a JSON config");
  std::string sweep_config;
  int sweep_threads = 0;
  std::string sweep_out_dir;
  sweep->add_option("--config", sweep_config, "sweep config (JSON)")->required();
  sweep->add_option("--threads", sweep_threads, "worker threads (default: machine parallelism)")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--out-dir", sweep_out_dir, "overrides output_dir from the config");

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "exact outcome distribution on a tiny instance");
  GraphFlags enum_graph;
  enum_graph.attach(enumerate_cmd);
  std::string enum_init;
  int enum_depth = 0;
  bool enum_paths = false;
  std::string enum_out;
  enumerate_cmd->add_option("--init", enum_init, "initial signals, e.g. W,B,W")->required();
  enumerate_cmd->add_option("--depth", enum_depth, "number of steps")->required()->check(CLI::NonNegativeNumber);
  enumerate_cmd->add_flag("--paths", enum_paths, "emit the per-draw-path view instead of merged compositions");
  enumerate_cmd->add_option("--out", enum_out, "output JSON (default stdout)");

  // ode
  auto* ode = app.add_subcommand("ode", "integrate the mean-field ODE");
  GraphFlags ode_graph;
  ode_graph.attach(ode);
  std::vector<double> ode_z0;
  double ode_horizon = 0.0;
  std::optional<double> ode_step;
  std::int64_t ode_stride = 1;
  std::string ode_out;
  ode->add_option("--z0", ode_z0, "initial proportions, comma separated")->required()->delimiter(',');
  ode->add_option("--horizon", ode_horizon, "integration horizon")->required();
  ode->add_option("--step", ode_step, "RK4 step size (default 0.01 / max degree)");
  ode->add_option("--stride", ode_stride, "record every k-th step")->check(CLI::PositiveNumber);
  ode->add_option("--out", ode_out, "output CSV (default stdout)");

  // fit
  auto* fit = app.add_subcommand("fit", "fit beta and normal laws to a samples CSV");
  std::string fit_in;
  std::string fit_column = "limit_estimate";
  std::string fit_out;
  fit->add_option("--in", fit_in, "samples CSV")->required();
  fit->add_option("--column", fit_column, "column to fit");
  fit->add_option("--out", fit_out, "output JSON (default stdout)");

  // report
  auto* report = app.add_subcommand("report", "per-alpha beta estimates table from samples CSVs");
  std::vector<std::string> report_in;
  std::string report_out;
  report->add_option("--in", report_in, "samples CSV(s), grouped by their alpha column")->required();
  report->add_option("--out", report_out, "output CSV (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      const Graph g = sim_graph.build();
      if (sim_alpha.has_value() == !sim_init.empty()) {
        throw InvalidParameter("simulate needs exactly one of --alpha or --init");
      }
      Rng rng(sim_seed);
      UrnState state = sim_init.empty() ? init_signals(g, *sim_alpha, rng)
                                        : init_fixed(g, parse_colors(sim_init));
      emit(sim_out, out, [&](std::ostream& os) {
        write_trajectory_header(os);
        write_trajectory_rows(os, state);
        DrawVector draws;
        while (state.t < sim_steps) {
          step(state, g, rng, draws);
          if (state.t % sim_stride == 0 || state.t == sim_steps) write_trajectory_rows(os, state);
        }
      });
    } else if (sweep->parsed()) {
      auto cfg = parse_sweep_config(read_file(sweep_config));
      if (!sweep_out_dir.empty()) cfg.output_dir = sweep_out_dir;
      const auto graph = std::make_shared<const Graph>(parse_graph_spec(cfg.graph_spec));
      std::filesystem::create_directories(cfg.output_dir);
      for (std::size_t level = 0; level < cfg.alphas.size(); ++level) {
        const auto run_cfg = level_config(cfg, graph, level);
        const auto results = run_sweep(run_cfg, sweep_threads);
        const auto path = (std::filesystem::path(cfg.output_dir) / samples_file_name(run_cfg.alpha)).string();
        emit(path, out, [&](std::ostream& os) { write_samples_csv(os, run_cfg.alpha, results); });
        double mean = 0.0;
        for (const auto& r : results) mean += r.correct_belief();
        mean /= static_cast<double>(results.size());
        double var = 0.0;
        for (const auto& r : results) var += (r.correct_belief() - mean) * (r.correct_belief() - mean);
        const double sd = results.size() > 1 ? std::sqrt(var / static_cast<double>(results.size() - 1)) : 0.0;
        out << "alpha=" << format_real(run_cfg.alpha) << " replicas=" << results.size()
            << " mean=" << format_real(mean) << " sd=" << format_real(sd) << " file=" << path << '\n';
      }
    } else if (enumerate_cmd->parsed()) {
      const Graph g = enum_graph.build();
      const UrnState init = init_fixed(g, parse_colors(enum_init));
      if (enum_paths) {
        const auto paths = enumerate_paths(g, init, enum_depth);
        emit(enum_out, out, [&](std::ostream& os) { write_paths_json(os, paths); });
      } else {
        const auto dist = enumerate(g, init, enum_depth);
        emit(enum_out, out, [&](std::ostream& os) { write_distribution_json(os, dist); });
      }
    } else if (ode->parsed()) {
      const Graph g = ode_graph.build();
      const double h = ode_step.value_or(default_step_size(g));
      const auto traj = integrate(g, ode_z0, h, ode_horizon, ode_stride);
      emit(ode_out, out, [&](std::ostream& os) { write_ode_csv(os, traj); });
    } else if (fit->parsed()) {
      const auto samples = read_csv_file(fit_in).numeric_column(fit_column);
      const auto summary = fit_and_compare(samples);
      emit(fit_out, out, [&](std::ostream& os) { write_fit_json(os, summary, samples.size()); });
    } else if (report->parsed()) {
      std::map<double, std::vector<double>> sweeps;
      for (const auto& path : report_in) {
        const auto table = read_csv_file(path);
        const auto alphas = table.numeric_column("alpha");
        const auto values = table.numeric_column("limit_estimate");
        for (std::size_t i = 0; i < values.size(); ++i) sweeps[alphas[i]].push_back(values[i]);
      }
      const auto rep = conjecture_report(sweeps);
      emit(report_out, out, [&](std::ostream& os) { write_report_csv(os, rep); });
      err << "max relative spread of a+b: " << format_real(rep.max_relative_spread_ab)
          << "\nmax |empirical mean - alpha|: " << format_real(rep.max_abs_empirical_mean_dev)
          << "\nmax |fitted mean - alpha|: " << format_real(rep.max_abs_fitted_mean_dev) << '\n';
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace urnnet::cli
