#ifndef BRNAV_SIMULATION_HPP
#define BRNAV_SIMULATION_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "brnav/scenario.hpp"

namespace brnav {

// Solver outcome at one planning step.
struct StepDiagnostics {
  int iterations = 0;
  bool converged = false;
  double final_metric = 0.0;
  std::vector<double> kl;   // per agent
  std::vector<double> ess;  // per agent
};

struct Metrics {
  std::vector<double> travel_distance;              // per agent, m
  std::vector<std::vector<double>> min_pairwise;    // [t][agent], m
  std::vector<int> collision_steps;                 // per agent, over t = 1..T
  std::vector<bool> goal_reached;                   // final distance < safety_radius
};

struct EpisodeResult {
  std::vector<JointState> trajectory;            // T+1 states
  std::vector<std::vector<Action>> executed;     // [t][agent], T rows
  std::vector<StepDiagnostics> diagnostics;      // T rows
  Metrics metrics;
};

class EpisodeFailure : public std::runtime_error {
 public:
  EpisodeFailure(int timestep, const std::string& what)
      : std::runtime_error("episode failed at timestep " + std::to_string(timestep) +
                           ": " + what),
        timestep(timestep) {}

  int timestep;
};

// Sum of consecutive position distances.
double travel_distance(std::span<const Vec3> positions);

// Distance from agent_index to its nearest other agent at step t. Returns
// +infinity for single-agent scenarios (no pair exists).
double min_pairwise_distance(const std::vector<JointState>& trajectory,
                             int agent_index, int t);

Metrics compute_metrics(const std::vector<JointState>& trajectory,
                        const ScenarioConfig& scenario);

// Receding-horizon episode: at each of the T steps, solve the game at the
// current joint state and execute only the first action of every plan.
// Run substreams derive from (base_seed, run_index, timestep), so a
// (scenario, run_index) pair is fully reproducible.
EpisodeResult run_episode(const ScenarioConfig& scenario, int run_index);

struct SummaryStat {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct AggregateSummary {
  int runs = 0;
  int agents = 0;
  int timesteps = 0;
  std::vector<SummaryStat> travel;          // per agent
  std::vector<double> collision_rate;       // per agent: mean collision_steps/T
  std::vector<double> goal_rate;            // per agent
  SummaryStat group_travel;                 // pooled over agents and runs
  double safety_rate = 1.0;   // fraction of (run, t, agent) with min pairwise
                              // distance > safety_radius
  double min_min_pairwise = 0.0;
  std::optional<int> ego;
  SummaryStat ego_travel;     // set when ego is designated
  SummaryStat others_travel;  // pooled over non-ego agents and runs
};

// Cross-run statistics; standard deviations are population (divide by n).
AggregateSummary aggregate(std::span<const EpisodeResult> results,
                           const ScenarioConfig& scenario,
                           std::optional<int> ego = std::nullopt);

}  // namespace brnav

#endif  // BRNAV_SIMULATION_HPP
