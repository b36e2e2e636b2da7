#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "brnav/experiment.hpp"
#include "brnav/numeric.hpp"
#include "brnav/scenario_io.hpp"

namespace {

int default_threads() {
  if (const char* env = std::getenv("BRNAV_THREADS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return 1;
}

int run_command(const std::string& scenario_path, std::vector<double> ego_betas,
                std::vector<int> samples, int runs, std::uint64_t seed,
                bool seed_given, int threads, bool deterministic,
                const std::string& out_dir) {
  brnav::ExperimentSpec spec;
  spec.scenario = brnav::parse_scenario(scenario_path);
  spec.ego_betas = std::move(ego_betas);
  spec.sample_counts = std::move(samples);
  spec.runs = runs;
  spec.threads = threads;
  spec.deterministic = deterministic;
  spec.out_dir = out_dir;
  if (seed_given) {
    spec.seed = seed;
  } else if (!deterministic) {
    spec.seed = std::random_device{}();
  }

  // Echo the resolved configuration before the runs start.
  brnav::ScenarioConfig resolved = spec.scenario;
  if (spec.seed) resolved.episode.base_seed = *spec.seed;
  if (spec.runs > 0) resolved.episode.runs = spec.runs;
  std::cout << "# resolved scenario (" << brnav::scenario_hash(resolved) << ")\n"
            << brnav::serialize_scenario(resolved) << "\n";

  const brnav::ExperimentResult result = brnav::run_experiment(spec);

  std::cout << "cells: " << result.cells.size() << "\n";
  for (const brnav::CellResult& cell : result.cells) {
    std::cout << "cell " << cell.index << ": ego_beta=" << brnav::format_g9(cell.ego_beta)
              << " samples=" << cell.samples << " ok_runs=" << cell.episodes.size()
              << " failed_runs=" << cell.failures.size();
    if (!cell.episodes.empty()) {
      std::cout << " group_mean_travel=" << brnav::format_g9(cell.summary.group_travel.mean)
                << " safety_rate=" << brnav::format_g9(cell.summary.safety_rate);
    }
    std::cout << "\n";
  }
  std::cout << "manifest: " << result.manifest_path.string() << "\n";
  return result.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-rational iterated-best-response navigation experiments"};
  app.require_subcommand(1);

  // run
  std::string scenario_path;
  std::vector<double> ego_betas;
  std::vector<int> samples;
  int runs = 0;
  std::uint64_t seed = 0;
  int threads = default_threads();
  bool deterministic = false;
  std::string out_dir;

  CLI::App* run = app.add_subcommand("run", "Run a scenario, optionally sweeping "
                                            "ego rationality and sample budgets");
  run->add_option("--scenario", scenario_path, "Scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--ego-beta", ego_betas,
                  "Rationality levels for agent 0, one cell per value")
      ->delimiter(',');
  run->add_option("--samples", samples,
                  "Sample budgets per best response, one cell per value")
      ->delimiter(',');
  run->add_option("--runs", runs, "Runs per cell (default: scenario value)");
  CLI::Option* seed_opt =
      run->add_option("--seed", seed, "Base seed (default: scenario value)");
  run->add_option("--threads", threads,
                  "Worker threads (default: BRNAV_THREADS or 1)");
  run->add_flag("--deterministic", deterministic,
                "Use the configured seed; without this flag and --seed, a fresh "
                "seed is drawn per invocation");
  run->add_option("--out", out_dir, "Output directory")->required();

  // swap-scenario
  int n_agents = 4;
  double distance = 6.0;
  double altitude = 1.0;
  double beta = 0.05;
  std::string scenario_out;

  CLI::App* gen = app.add_subcommand("swap-scenario",
                                     "Emit a circular position-swap scenario");
  gen->add_option("--agents", n_agents, "Number of agents")->required();
  gen->add_option("--distance", distance, "Start-to-goal distance, m");
  gen->add_option("--altitude", altitude, "Flight altitude, m");
  gen->add_option("--beta", beta, "Rationality level for every agent");
  gen->add_option("--out", scenario_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(scenario_path, ego_betas, samples, runs, seed,
                         seed_opt->count() > 0, threads, deterministic, out_dir);
    }
    if (gen->parsed()) {
      const brnav::ScenarioConfig scenario =
          brnav::position_swap_scenario(n_agents, distance, altitude, beta);
      const std::string text = brnav::serialize_scenario(scenario);
      if (scenario_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(scenario_out);
        if (!out) {
          std::cerr << "cannot open " << scenario_out << "\n";
          return 1;
        }
        out << text;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
