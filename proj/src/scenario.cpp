#include "brnav/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace brnav {

void validate(const ScenarioConfig& scenario) {
  if (scenario.agents.empty()) {
    throw std::invalid_argument("scenario requires at least one agent");
  }
  for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
    const AgentSpec& agent = scenario.agents[i];
    if (!agent.start.allFinite() || !agent.goal.allFinite()) {
      throw std::invalid_argument("agent " + std::to_string(i) +
                                  ": start/goal must be finite");
    }
    validate(RationalityLevel{agent.beta});
  }
  validate(scenario.reward);
  for (const Obstacle& obstacle : scenario.obstacles) {
    validate(obstacle);
  }
  validate(scenario.prior);
  validate(scenario.solver);
  if (scenario.prior.horizon < 1) {
    throw std::invalid_argument("episodes require prior horizon >= 1");
  }
  if (scenario.episode.timesteps < 1) {
    throw std::invalid_argument("episode T must be >= 1");
  }
  if (!(scenario.episode.dt > 0.0) || !std::isfinite(scenario.episode.dt)) {
    throw std::invalid_argument("episode dt must be > 0");
  }
  if (scenario.episode.runs < 1) {
    throw std::invalid_argument("episode runs must be >= 1");
  }
  for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
    for (std::size_t j = i + 1; j < scenario.agents.size(); ++j) {
      const double d =
          (scenario.agents[i].start - scenario.agents[j].start).norm();
      if (d < scenario.reward.safety_radius) {
        throw std::invalid_argument(
            "agents " + std::to_string(i) + " and " + std::to_string(j) +
            " start closer than safety_radius");
      }
    }
  }
}

Game make_game(const ScenarioConfig& scenario) {
  Game game;
  game.reward = scenario.reward;
  game.bounds = ActionBounds{scenario.prior.a_min, scenario.prior.a_max};
  game.goals.reserve(scenario.agents.size());
  for (const AgentSpec& agent : scenario.agents) {
    game.goals.push_back(agent.goal);
  }
  game.obstacles = scenario.obstacles;
  game.dt = scenario.episode.dt;
  return game;
}

std::vector<RationalityLevel> rationality_levels(const ScenarioConfig& scenario) {
  std::vector<RationalityLevel> betas;
  betas.reserve(scenario.agents.size());
  for (const AgentSpec& agent : scenario.agents) {
    betas.push_back(RationalityLevel{agent.beta});
  }
  return betas;
}

ScenarioConfig position_swap_scenario(int n_agents, double goal_distance,
                                      double altitude, double beta) {
  if (n_agents < 2) {
    throw std::invalid_argument("position swap needs at least 2 agents");
  }
  if (!(goal_distance > 0.0)) {
    throw std::invalid_argument("goal_distance must be > 0");
  }
  ScenarioConfig scenario;
  scenario.agents.reserve(n_agents);
  const double radius = goal_distance / 2.0;
  for (int i = 0; i < n_agents; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / n_agents;
    const Vec3 start(radius * std::cos(angle), radius * std::sin(angle), altitude);
    AgentSpec agent;
    agent.start = start;
    agent.goal = Vec3(-start.x(), -start.y(), altitude);
    agent.beta = beta;
    scenario.agents.push_back(agent);
  }
  validate(scenario);
  return scenario;
}

}  // namespace brnav
