#ifndef BRNAV_SCENARIO_HPP
#define BRNAV_SCENARIO_HPP

#include <cstdint>
#include <vector>

#include "brnav/solver.hpp"

namespace brnav {

struct AgentSpec {
  Vec3 start{0.0, 0.0, 0.0};
  Vec3 goal{0.0, 0.0, 0.0};
  double beta = 0.05;
};

struct EpisodeParams {
  int timesteps = 80;  // executed steps T
  double dt = 0.25;    // s
  int runs = 50;
  std::uint64_t base_seed = 0;
};

// Full experiment description; the unit every run and sweep derives from.
struct ScenarioConfig {
  std::vector<AgentSpec> agents;
  std::vector<Obstacle> obstacles;
  RewardParams reward;
  UniformPrior prior;
  SolverConfig solver;
  EpisodeParams episode;
};

// Checks every nested invariant; throws invalid_argument naming the field.
void validate(const ScenarioConfig& scenario);

Game make_game(const ScenarioConfig& scenario);

std::vector<RationalityLevel> rationality_levels(const ScenarioConfig& scenario);

// Agents equally spaced on a circle of diameter goal_distance at the given
// altitude, each tasked with reaching the diametrically opposite point.
ScenarioConfig position_swap_scenario(int n_agents, double goal_distance = 6.0,
                                      double altitude = 1.0, double beta = 0.05);

}  // namespace brnav

#endif  // BRNAV_SCENARIO_HPP
