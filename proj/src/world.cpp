#include "brnav/world.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace brnav {

namespace {

bool inside_box(const Vec3& p, const InflatedBox& box) {
  return p.x() > box.lo.x() && p.x() < box.hi.x() && p.y() > box.lo.y() &&
         p.y() < box.hi.y() && p.z() > box.lo.z() && p.z() < box.hi.z();
}

}  // namespace

void validate(const RewardParams& params) {
  if (!(params.goal_weight >= 0.0) || !std::isfinite(params.goal_weight) ||
      !(params.collision_penalty >= 0.0) || !std::isfinite(params.collision_penalty) ||
      !(params.obstacle_penalty >= 0.0) || !std::isfinite(params.obstacle_penalty)) {
    throw std::invalid_argument("reward weights must be finite and >= 0");
  }
  if (!(params.safety_radius > 0.0) || !std::isfinite(params.safety_radius)) {
    throw std::invalid_argument("safety_radius must be > 0");
  }
}

void validate(const Obstacle& obstacle) {
  if (!obstacle.center.allFinite() || !obstacle.half_extents.allFinite()) {
    throw std::invalid_argument("obstacle fields must be finite");
  }
  if (!(obstacle.half_extents.minCoeff() > 0.0)) {
    throw std::invalid_argument("obstacle half_extents must be > 0");
  }
}

bool action_valid(const Action& action, const ActionBounds& bounds) {
  if (!action.velocity.allFinite()) {
    return false;
  }
  const double n = action.velocity.norm();
  const double slack_hi = kSpeedSlack * std::max(1.0, bounds.a_max);
  const double slack_lo = kSpeedSlack * std::max(1.0, bounds.a_min);
  return n <= bounds.a_max + slack_hi && n >= bounds.a_min - slack_lo;
}

JointState step(const JointState& state, std::span<const Action> actions,
                const ActionBounds& bounds, double dt) {
  if (static_cast<int>(actions.size()) != state.size()) {
    throw std::invalid_argument("step: expected " + std::to_string(state.size()) +
                                " actions, got " + std::to_string(actions.size()));
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step: dt must be > 0");
  }
  JointState next = state;
  for (int i = 0; i < state.size(); ++i) {
    if (!action_valid(actions[i], bounds)) {
      throw std::invalid_argument("step: action norm for agent " + std::to_string(i) +
                                  " outside [" + std::to_string(bounds.a_min) + ", " +
                                  std::to_string(bounds.a_max) + "]");
    }
    next.agents[i].position += actions[i].velocity * dt;
  }
  return next;
}

double reward(int agent_index, const JointState& state, const RewardParams& params,
              std::span<const Vec3> goals, std::span<const Obstacle> obstacles) {
  const int n = state.size();
  if (agent_index < 0 || agent_index >= n) {
    throw std::invalid_argument("reward: agent index " + std::to_string(agent_index) +
                                " out of range");
  }
  if (static_cast<int>(goals.size()) != n) {
    throw std::invalid_argument("reward: goal count mismatch");
  }
  const Vec3& p = state.agents[agent_index].position;

  double r = -params.goal_weight * (p - goals[agent_index]).norm();

  const double radius_sq = params.safety_radius * params.safety_radius;
  for (int j = 0; j < n; ++j) {
    if (j == agent_index) continue;
    if ((p - state.agents[j].position).squaredNorm() < radius_sq) {
      r -= params.collision_penalty;
      break;
    }
  }

  for (const Obstacle& obstacle : obstacles) {
    const Vec3 d = (p - obstacle.center).cwiseAbs();
    const Vec3 bound = obstacle.half_extents + Vec3::Constant(kAgentHalfExtent);
    if (d.x() < bound.x() && d.y() < bound.y() && d.z() < bound.z()) {
      r -= params.obstacle_penalty;
      break;
    }
  }
  return r;
}

std::vector<JointState> rollout(const JointState& initial,
                                std::span<const ActionSequence> plans,
                                const ActionBounds& bounds, double dt) {
  const int n = initial.size();
  if (static_cast<int>(plans.size()) != n) {
    throw std::invalid_argument("rollout: one plan per agent required");
  }
  const int horizon = n > 0 ? plans[0].horizon() : 0;
  for (const ActionSequence& plan : plans) {
    if (plan.horizon() != horizon) {
      throw std::invalid_argument("rollout: plans must share one horizon");
    }
  }
  std::vector<JointState> trajectory;
  trajectory.reserve(horizon + 1);
  trajectory.push_back(initial);
  std::vector<Action> slice(n);
  for (int k = 0; k < horizon; ++k) {
    for (int i = 0; i < n; ++i) {
      slice[i] = plans[i].actions[k];
    }
    trajectory.push_back(step(trajectory.back(), slice, bounds, dt));
  }
  return trajectory;
}

double utility(int agent_index, const JointState& initial,
               std::span<const ActionSequence> plans, const RewardParams& params,
               std::span<const Vec3> goals, std::span<const Obstacle> obstacles,
               const ActionBounds& bounds, double dt) {
  const std::vector<JointState> trajectory = rollout(initial, plans, bounds, dt);
  double total = 0.0;
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    total += reward(agent_index, trajectory[k], params, goals, obstacles);
  }
  return total;
}

OpponentTrack predict_opponents(const JointState& state,
                                std::span<const ActionSequence> plans, int skip,
                                double dt) {
  const int n = state.size();
  if (static_cast<int>(plans.size()) != n) {
    throw std::invalid_argument("predict_opponents: one plan per agent required");
  }
  if (skip < 0 || skip >= n) {
    throw std::invalid_argument("predict_opponents: skip index out of range");
  }
  OpponentTrack track;
  track.count = n - 1;
  track.horizon = plans[0].horizon();
  track.positions.resize(static_cast<std::size_t>(track.horizon) * track.count);

  std::vector<Vec3> current;
  current.reserve(track.count);
  std::vector<const ActionSequence*> opponent_plans;
  opponent_plans.reserve(track.count);
  for (int j = 0; j < n; ++j) {
    if (j == skip) continue;
    current.push_back(state.agents[j].position);
    opponent_plans.push_back(&plans[j]);
    if (plans[j].horizon() != track.horizon) {
      throw std::invalid_argument("predict_opponents: plans must share one horizon");
    }
  }
  for (int k = 0; k < track.horizon; ++k) {
    for (int j = 0; j < track.count; ++j) {
      current[j] += opponent_plans[j]->actions[k].velocity * dt;
      track.positions[static_cast<std::size_t>(k) * track.count + j] = current[j];
    }
  }
  return track;
}

std::vector<InflatedBox> inflate(std::span<const Obstacle> obstacles) {
  std::vector<InflatedBox> boxes;
  boxes.reserve(obstacles.size());
  for (const Obstacle& obstacle : obstacles) {
    const Vec3 bound = obstacle.half_extents + Vec3::Constant(kAgentHalfExtent);
    boxes.push_back({obstacle.center - bound, obstacle.center + bound});
  }
  return boxes;
}

double utility_vs_opponents(const Vec3& start, std::span<const Vec3> velocities,
                            const OpponentTrack& opponents, const Vec3& goal,
                            const RewardParams& params,
                            std::span<const InflatedBox> boxes, double dt) {
  const double radius_sq = params.safety_radius * params.safety_radius;
  Vec3 p = start;
  double total = 0.0;
  const int horizon = static_cast<int>(velocities.size());
  for (int k = 0; k < horizon; ++k) {
    p += velocities[k] * dt;
    total -= params.goal_weight * (p - goal).norm();
    for (int j = 0; j < opponents.count; ++j) {
      if ((p - opponents.at(k, j)).squaredNorm() < radius_sq) {
        total -= params.collision_penalty;
        break;
      }
    }
    for (const InflatedBox& box : boxes) {
      if (inside_box(p, box)) {
        total -= params.obstacle_penalty;
        break;
      }
    }
  }
  return total;
}

}  // namespace brnav
