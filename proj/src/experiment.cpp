#include "brnav/experiment.hpp"

#include <bit>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "brnav/numeric.hpp"
#include "brnav/scenario_io.hpp"

namespace brnav {

namespace {

std::string cell_file(const std::string& kind, int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", index);
  return kind + "_cell" + buf + ".csv";
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  return out;
}

void write_trajectories(std::ofstream& out, const CellResult& cell,
                        const std::string& hash) {
  out << "scenario_hash,seed,ego_beta,samples,run,t,agent,x,y,z\n";
  const std::string prefix = hash + "," + std::to_string(cell.cell_seed) + "," +
                             format_g9(cell.ego_beta) + "," +
                             std::to_string(cell.samples) + ",";
  for (std::size_t r = 0; r < cell.episodes.size(); ++r) {
    const EpisodeResult& episode = cell.episodes[r];
    for (std::size_t t = 0; t < episode.trajectory.size(); ++t) {
      const JointState& state = episode.trajectory[t];
      for (int i = 0; i < state.size(); ++i) {
        const Vec3& p = state.agents[i].position;
        out << prefix << cell.run_indices[r] << "," << t << "," << i << ","
            << format_g9(p.x()) << "," << format_g9(p.y()) << ","
            << format_g9(p.z()) << "\n";
      }
    }
  }
}

void write_metrics(std::ofstream& out, const CellResult& cell,
                   const std::string& hash) {
  out << "scenario_hash,seed,ego_beta,samples,run,agent,travel_distance,"
         "collision_steps,collision_rate,goal_reached,min_pairwise_min,"
         "mean_kl,mean_ess,converged_fraction,mean_iterations\n";
  const int t_max = cell.scenario.episode.timesteps;
  const std::string prefix = hash + "," + std::to_string(cell.cell_seed) + "," +
                             format_g9(cell.ego_beta) + "," +
                             std::to_string(cell.samples) + ",";
  for (std::size_t r = 0; r < cell.episodes.size(); ++r) {
    const EpisodeResult& episode = cell.episodes[r];
    const int n = static_cast<int>(episode.metrics.travel_distance.size());
    double converged = 0.0;
    double iterations = 0.0;
    for (const StepDiagnostics& d : episode.diagnostics) {
      converged += d.converged ? 1.0 : 0.0;
      iterations += d.iterations;
    }
    converged /= episode.diagnostics.size();
    iterations /= episode.diagnostics.size();
    for (int i = 0; i < n; ++i) {
      double min_pairwise = std::numeric_limits<double>::infinity();
      for (const std::vector<double>& row : episode.metrics.min_pairwise) {
        min_pairwise = std::min(min_pairwise, row[i]);
      }
      double mean_kl = 0.0;
      double mean_ess = 0.0;
      for (const StepDiagnostics& d : episode.diagnostics) {
        mean_kl += d.kl[i];
        mean_ess += d.ess[i];
      }
      mean_kl /= episode.diagnostics.size();
      mean_ess /= episode.diagnostics.size();
      out << prefix << cell.run_indices[r] << "," << i << ","
          << format_g9(episode.metrics.travel_distance[i]) << ","
          << episode.metrics.collision_steps[i] << ","
          << format_g9(static_cast<double>(episode.metrics.collision_steps[i]) / t_max)
          << "," << (episode.metrics.goal_reached[i] ? 1 : 0) << ","
          << format_g9(min_pairwise) << "," << format_g9(mean_kl) << ","
          << format_g9(mean_ess) << "," << format_g9(converged) << ","
          << format_g9(iterations) << "\n";
    }
  }
}

void write_diagnostics(std::ofstream& out, const CellResult& cell,
                       const std::string& hash) {
  out << "scenario_hash,seed,ego_beta,samples,run,t,agent,kl,ess,iterations,"
         "converged,final_metric\n";
  const std::string prefix = hash + "," + std::to_string(cell.cell_seed) + "," +
                             format_g9(cell.ego_beta) + "," +
                             std::to_string(cell.samples) + ",";
  for (std::size_t r = 0; r < cell.episodes.size(); ++r) {
    const EpisodeResult& episode = cell.episodes[r];
    for (std::size_t t = 0; t < episode.diagnostics.size(); ++t) {
      const StepDiagnostics& d = episode.diagnostics[t];
      for (std::size_t i = 0; i < d.kl.size(); ++i) {
        out << prefix << cell.run_indices[r] << "," << t << "," << i << ","
            << format_g9(d.kl[i]) << "," << format_g9(d.ess[i]) << ","
            << d.iterations << "," << (d.converged ? 1 : 0) << ","
            << format_g9(d.final_metric) << "\n";
      }
    }
  }
}

}  // namespace

std::string scenario_hash(const ScenarioConfig& scenario) {
  return to_hex(fnv1a64(serialize_scenario(scenario)));
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  validate(spec.scenario);
  if (spec.threads < 1) {
    throw std::invalid_argument("experiment threads must be >= 1");
  }
  if (spec.runs < 0) {
    throw std::invalid_argument("experiment runs must be >= 1 (or 0 for scenario default)");
  }
  for (const double beta : spec.ego_betas) {
    validate(RationalityLevel{beta});
  }
  for (const int count : spec.sample_counts) {
    if (count < 1) throw std::invalid_argument("sample counts must be >= 1");
  }

  ScenarioConfig base = spec.scenario;
  if (spec.seed) base.episode.base_seed = *spec.seed;
  if (spec.runs > 0) base.episode.runs = spec.runs;
  const int runs = base.episode.runs;
  const std::string hash = scenario_hash(base);

  // Resolved sweep axes; empty axes collapse to the scenario's own values.
  std::vector<double> betas = spec.ego_betas;
  if (betas.empty()) betas.push_back(base.agents[0].beta);
  std::vector<int> counts = spec.sample_counts;
  if (counts.empty()) counts.push_back(base.solver.samples_per_response);

  ExperimentResult result;
  result.scenario_hash = hash;
  result.base_seed = base.episode.base_seed;

  const int total_tasks = static_cast<int>(betas.size() * counts.size()) * runs;
  for (const double beta : betas) {
    for (const int count : counts) {
      CellResult cell;
      cell.index = static_cast<int>(result.cells.size());
      cell.ego_beta = beta;
      cell.samples = count;
      cell.cell_seed =
          mix64(base.episode.base_seed,
                mix64(std::bit_cast<std::uint64_t>(beta),
                      static_cast<std::uint64_t>(count)));
      cell.scenario = base;
      cell.scenario.agents[0].beta = beta;
      cell.scenario.solver.samples_per_response = count;
      cell.scenario.episode.base_seed = cell.cell_seed;
      cell.scenario.solver.threads = total_tasks == 1 ? spec.threads : 1;
      result.cells.push_back(std::move(cell));
    }
  }

  struct Task {
    int cell;
    int run;
  };
  std::vector<Task> tasks;
  tasks.reserve(total_tasks);
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    for (int r = 0; r < runs; ++r) {
      tasks.push_back({static_cast<int>(c), r});
    }
  }

  std::vector<std::vector<std::optional<EpisodeResult>>> episodes(
      result.cells.size(), std::vector<std::optional<EpisodeResult>>(runs));
  std::vector<std::vector<std::optional<RunFailure>>> failures(
      result.cells.size(), std::vector<std::optional<RunFailure>>(runs));

#pragma omp parallel for schedule(dynamic) num_threads(spec.threads) \
    if (spec.threads > 1)
  for (int t = 0; t < static_cast<int>(tasks.size()); ++t) {
    const Task task = tasks[t];
    try {
      episodes[task.cell][task.run] =
          run_episode(result.cells[task.cell].scenario, task.run);
    } catch (const EpisodeFailure& e) {
      failures[task.cell][task.run] = RunFailure{task.run, e.timestep, e.what()};
    } catch (const std::exception& e) {
      failures[task.cell][task.run] = RunFailure{task.run, -1, e.what()};
    }
  }

  // Collect in fixed (cell, run) order.
  bool any_success = false;
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    CellResult& cell = result.cells[c];
    for (int r = 0; r < runs; ++r) {
      if (episodes[c][r]) {
        cell.episodes.push_back(std::move(*episodes[c][r]));
        cell.run_indices.push_back(r);
        any_success = true;
      } else if (failures[c][r]) {
        cell.failures.push_back(*failures[c][r]);
      }
    }
    if (!cell.episodes.empty()) {
      const std::optional<int> ego =
          cell.scenario.agents.size() >= 2 ? std::optional<int>(0) : std::nullopt;
      cell.summary = aggregate(cell.episodes, cell.scenario, ego);
    }
  }
  result.status = any_success ? 0 : 1;

  std::filesystem::create_directories(spec.out_dir);

  nlohmann::json manifest;
  manifest["tool"] = "brnav";
  manifest["version"] = kVersion;
  manifest["scenario_hash"] = hash;
  manifest["base_seed"] = base.episode.base_seed;
  manifest["deterministic"] = spec.deterministic;
  manifest["runs_per_cell"] = runs;
  manifest["resolved_scenario"] = serialize_scenario(base);
  manifest["cells"] = nlohmann::json::array();

  std::ofstream aggregates = open_out(spec.out_dir / "aggregates.csv");
  aggregates << "# travel statistics in meters; std is population (divide by n)\n";
  aggregates << "scenario_hash,ego_beta,samples,runs,ego_mean_travel,ego_std_travel,"
                "others_mean_travel,others_std_travel,group_mean_travel,"
                "group_std_travel,mean_collision_rate,goal_reached_rate,"
                "safety_rate,min_min_pairwise\n";

  for (CellResult& cell : result.cells) {
    const std::string traj_name = cell_file("trajectories", cell.index);
    const std::string metrics_name = cell_file("metrics", cell.index);
    const std::string diag_name = cell_file("diagnostics", cell.index);
    {
      std::ofstream out = open_out(spec.out_dir / traj_name);
      write_trajectories(out, cell, hash);
    }
    {
      std::ofstream out = open_out(spec.out_dir / metrics_name);
      write_metrics(out, cell, hash);
    }
    {
      std::ofstream out = open_out(spec.out_dir / diag_name);
      write_diagnostics(out, cell, hash);
    }

    nlohmann::json entry;
    entry["index"] = cell.index;
    entry["ego_beta"] = cell.ego_beta;
    entry["samples"] = cell.samples;
    entry["cell_seed"] = cell.cell_seed;
    entry["resolved_scenario"] = serialize_scenario(cell.scenario);
    entry["files"] = {{"trajectories", traj_name},
                      {"metrics", metrics_name},
                      {"diagnostics", diag_name}};
    entry["runs_ok"] = cell.run_indices;
    entry["failures"] = nlohmann::json::array();
    for (const RunFailure& f : cell.failures) {
      entry["failures"].push_back(
          {{"run", f.run}, {"timestep", f.timestep}, {"message", f.message}});
    }
    if (!cell.episodes.empty()) {
      const AggregateSummary& s = cell.summary;
      nlohmann::json stats;
      stats["group_mean_travel"] = s.group_travel.mean;
      stats["group_std_travel"] = s.group_travel.stddev;
      stats["safety_rate"] = s.safety_rate;
      stats["min_min_pairwise"] = s.min_min_pairwise;
      if (s.ego) {
        stats["ego_mean_travel"] = s.ego_travel.mean;
        stats["others_mean_travel"] = s.others_travel.mean;
      }
      entry["summary"] = stats;

      double collision_rate = 0.0;
      double goal_rate = 0.0;
      for (int i = 0; i < s.agents; ++i) {
        collision_rate += s.collision_rate[i];
        goal_rate += s.goal_rate[i];
      }
      collision_rate /= s.agents;
      goal_rate /= s.agents;
      aggregates << hash << "," << format_g9(cell.ego_beta) << "," << cell.samples
                 << "," << s.runs << "," << format_g9(s.ego ? s.ego_travel.mean : s.group_travel.mean)
                 << "," << format_g9(s.ego ? s.ego_travel.stddev : s.group_travel.stddev)
                 << "," << format_g9(s.ego ? s.others_travel.mean : s.group_travel.mean)
                 << "," << format_g9(s.ego ? s.others_travel.stddev : s.group_travel.stddev)
                 << "," << format_g9(s.group_travel.mean) << ","
                 << format_g9(s.group_travel.stddev) << ","
                 << format_g9(collision_rate) << "," << format_g9(goal_rate) << ","
                 << format_g9(s.safety_rate) << "," << format_g9(s.min_min_pairwise)
                 << "\n";
    }
    manifest["cells"].push_back(entry);
  }

  result.manifest_path = spec.out_dir / "manifest.json";
  {
    std::ofstream out = open_out(result.manifest_path);
    out << manifest.dump(2) << "\n";
  }
  return result;
}

}  // namespace brnav
