#include "brnav/simulation.hpp"

#include <cmath>
#include <limits>

namespace brnav {

double travel_distance(std::span<const Vec3> positions) {
  if (positions.empty()) {
    throw std::invalid_argument("travel_distance: needs at least one position");
  }
  double total = 0.0;
  for (std::size_t t = 1; t < positions.size(); ++t) {
    total += (positions[t] - positions[t - 1]).norm();
  }
  return total;
}

double min_pairwise_distance(const std::vector<JointState>& trajectory,
                             int agent_index, int t) {
  if (t < 0 || t >= static_cast<int>(trajectory.size())) {
    throw std::invalid_argument("min_pairwise_distance: timestep out of range");
  }
  const JointState& state = trajectory[t];
  if (agent_index < 0 || agent_index >= state.size()) {
    throw std::invalid_argument("min_pairwise_distance: agent index out of range");
  }
  double best = std::numeric_limits<double>::infinity();
  const Vec3& p = state.agents[agent_index].position;
  for (int j = 0; j < state.size(); ++j) {
    if (j == agent_index) continue;
    best = std::min(best, (p - state.agents[j].position).norm());
  }
  return best;
}

Metrics compute_metrics(const std::vector<JointState>& trajectory,
                        const ScenarioConfig& scenario) {
  const int n = static_cast<int>(scenario.agents.size());
  const int t_max = static_cast<int>(trajectory.size()) - 1;
  Metrics metrics;
  metrics.travel_distance.resize(n);
  metrics.collision_steps.assign(n, 0);
  metrics.goal_reached.resize(n);
  metrics.min_pairwise.assign(t_max + 1, std::vector<double>(n));

  std::vector<Vec3> path(t_max + 1);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t <= t_max; ++t) {
      path[t] = trajectory[t].agents[i].position;
      metrics.min_pairwise[t][i] = min_pairwise_distance(trajectory, i, t);
      if (t >= 1 && metrics.min_pairwise[t][i] < scenario.reward.safety_radius) {
        ++metrics.collision_steps[i];
      }
    }
    metrics.travel_distance[i] = travel_distance(path);
    const double final_gap = (path[t_max] - scenario.agents[i].goal).norm();
    metrics.goal_reached[i] = final_gap < scenario.reward.safety_radius;
  }
  return metrics;
}

EpisodeResult run_episode(const ScenarioConfig& scenario, int run_index) {
  validate(scenario);
  if (run_index < 0) {
    throw std::invalid_argument("run_episode: run_index must be >= 0");
  }
  const Game game = make_game(scenario);
  const std::vector<RationalityLevel> betas = rationality_levels(scenario);
  const int n = static_cast<int>(scenario.agents.size());
  const int t_max = scenario.episode.timesteps;

  JointState state;
  state.agents.resize(n);
  for (int i = 0; i < n; ++i) {
    state.agents[i].position = scenario.agents[i].start;
  }

  const SeededGenerator run_gen =
      SeededGenerator(scenario.episode.base_seed, 0)
          .substream(static_cast<std::uint64_t>(run_index));

  EpisodeResult result;
  result.trajectory.reserve(t_max + 1);
  result.trajectory.push_back(state);
  result.executed.reserve(t_max);
  result.diagnostics.reserve(t_max);

  std::vector<Action> first_actions(n);
  SolveOptions options;
  options.update_order.resize(n);
  for (int t = 0; t < t_max; ++t) {
    // Rotate the sweep start across timesteps. A fixed start hands the same
    // agent right-of-way at every conflict (it commits first and everyone
    // else routes around it), which drowns out the rationality effects the
    // episode is supposed to measure.
    for (int i = 0; i < n; ++i) {
      options.update_order[i] = (t + i) % n;
    }
    StrategyProfile profile;
    try {
      profile = solve(state, betas, scenario.prior, game, scenario.solver,
                      run_gen.substream(static_cast<std::uint64_t>(t)), options);
    } catch (const std::exception& e) {
      throw EpisodeFailure(t, e.what());
    }

    StepDiagnostics diag;
    diag.iterations = profile.iterations;
    diag.converged = profile.converged;
    diag.final_metric = profile.final_metric;
    diag.kl.reserve(n);
    diag.ess.reserve(n);
    for (const AgentDiagnostics& d : profile.diagnostics) {
      diag.kl.push_back(d.kl);
      diag.ess.push_back(d.ess);
    }
    result.diagnostics.push_back(std::move(diag));

    for (int i = 0; i < n; ++i) {
      first_actions[i] = profile.plans[i].actions.front();
    }
    state = step(state, first_actions, game.bounds, game.dt);
    result.executed.push_back(first_actions);
    result.trajectory.push_back(state);
  }

  result.metrics = compute_metrics(result.trajectory, scenario);
  return result;
}

namespace {

SummaryStat stat_of(std::span<const double> values) {
  SummaryStat s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / values.size();
  double sq = 0.0;
  for (const double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / values.size());
  return s;
}

}  // namespace

AggregateSummary aggregate(std::span<const EpisodeResult> results,
                           const ScenarioConfig& scenario,
                           std::optional<int> ego) {
  if (results.empty()) {
    throw std::invalid_argument("aggregate: no episode results");
  }
  const int n = static_cast<int>(scenario.agents.size());
  const int t_max = scenario.episode.timesteps;
  for (const EpisodeResult& r : results) {
    if (static_cast<int>(r.metrics.travel_distance.size()) != n ||
        static_cast<int>(r.trajectory.size()) != t_max + 1) {
      throw std::invalid_argument("aggregate: result shape mismatch");
    }
  }
  if (ego && (*ego < 0 || *ego >= n)) {
    throw std::invalid_argument("aggregate: ego index out of range");
  }

  AggregateSummary summary;
  summary.runs = static_cast<int>(results.size());
  summary.agents = n;
  summary.timesteps = t_max;
  summary.ego = ego;
  summary.travel.resize(n);
  summary.collision_rate.resize(n);
  summary.goal_rate.resize(n);

  std::vector<double> pool;
  std::vector<double> group_pool;
  std::vector<double> others_pool;
  pool.reserve(results.size());
  group_pool.reserve(results.size() * n);

  for (int i = 0; i < n; ++i) {
    pool.clear();
    double collisions = 0.0;
    double reached = 0.0;
    for (const EpisodeResult& r : results) {
      const double travel = r.metrics.travel_distance[i];
      pool.push_back(travel);
      group_pool.push_back(travel);
      if (!ego || i != *ego) others_pool.push_back(travel);
      collisions += static_cast<double>(r.metrics.collision_steps[i]) / t_max;
      reached += r.metrics.goal_reached[i] ? 1.0 : 0.0;
    }
    summary.travel[i] = stat_of(pool);
    summary.collision_rate[i] = collisions / results.size();
    summary.goal_rate[i] = reached / results.size();
  }
  summary.group_travel = stat_of(group_pool);

  double safe = 0.0;
  double total = 0.0;
  double global_min = std::numeric_limits<double>::infinity();
  for (const EpisodeResult& r : results) {
    for (const std::vector<double>& row : r.metrics.min_pairwise) {
      for (const double d : row) {
        total += 1.0;
        if (d > scenario.reward.safety_radius) safe += 1.0;
        global_min = std::min(global_min, d);
      }
    }
  }
  summary.safety_rate = total > 0.0 ? safe / total : 1.0;
  summary.min_min_pairwise = global_min;

  if (ego) {
    pool.clear();
    for (const EpisodeResult& r : results) {
      pool.push_back(r.metrics.travel_distance[*ego]);
    }
    summary.ego_travel = stat_of(pool);
    summary.others_travel = stat_of(others_pool);
  }
  return summary;
}

}  // namespace brnav
