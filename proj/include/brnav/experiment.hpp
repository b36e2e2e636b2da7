#ifndef BRNAV_EXPERIMENT_HPP
#define BRNAV_EXPERIMENT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "brnav/simulation.hpp"

namespace brnav {

inline constexpr const char* kVersion = "0.1.0";

// Batch experiment: a scenario crossed with sweep axes. Empty axes mean a
// single cell at the scenario's own values. The ego agent is index 0.
struct ExperimentSpec {
  ScenarioConfig scenario;
  std::vector<double> ego_betas;
  std::vector<int> sample_counts;
  int runs = 0;  // 0: use scenario.episode.runs
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool deterministic = true;
  std::filesystem::path out_dir;
};

struct RunFailure {
  int run = 0;
  int timestep = 0;
  std::string message;
};

struct CellResult {
  int index = 0;
  double ego_beta = 0.0;  // resolved coordinate (agent 0's beta)
  int samples = 0;        // resolved coordinate
  std::uint64_t cell_seed = 0;
  ScenarioConfig scenario;
  std::vector<EpisodeResult> episodes;  // successful runs, by run order
  std::vector<int> run_indices;         // run index of each episode
  std::vector<RunFailure> failures;
  AggregateSummary summary;  // over successful runs (agents >= 2 set ego=0)
};

struct ExperimentResult {
  int status = 0;  // nonzero only if every cell failed completely
  std::string scenario_hash;
  std::uint64_t base_seed = 0;
  std::vector<CellResult> cells;
  std::filesystem::path manifest_path;
};

// Content fingerprint of the resolved scenario, carried on every output row.
std::string scenario_hash(const ScenarioConfig& scenario);

// Runs every (cell, run), writes per-cell trajectory/metrics/diagnostics
// files, an aggregates table, and a manifest.json under spec.out_dir.
// Outputs are byte-identical for any thread count: episodes land in
// run-indexed slots and all files are written serially in fixed order.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace brnav

#endif  // BRNAV_EXPERIMENT_HPP
