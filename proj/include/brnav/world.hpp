#ifndef BRNAV_WORLD_HPP
#define BRNAV_WORLD_HPP

#include <Eigen/Core>
#include <span>
#include <vector>

namespace brnav {

using Vec3 = Eigen::Vector3d;

// Agents are axis-aligned boxes of 0.125 m edge length; obstacles are
// inflated by this half-extent for point-in-box checks.
inline constexpr double kAgentHalfExtent = 0.0625;

// Relative slack accepted when validating action norms against the speed
// bounds, so that samples sitting exactly on the bound survive round-off.
inline constexpr double kSpeedSlack = 1e-9;

struct AgentState {
  Vec3 position{0.0, 0.0, 0.0};
};

// One state per agent; the index identifies the agent throughout.
struct JointState {
  std::vector<AgentState> agents;

  int size() const { return static_cast<int>(agents.size()); }
};

// Velocity command, held for one timestep.
struct Action {
  Vec3 velocity{0.0, 0.0, 0.0};
};

// Planned velocity commands over the horizon.
struct ActionSequence {
  std::vector<Action> actions;

  int horizon() const { return static_cast<int>(actions.size()); }
};

// Axis-aligned box.
struct Obstacle {
  Vec3 center{0.0, 0.0, 0.0};
  Vec3 half_extents{0.0, 0.0, 0.0};
};

// Admissible speed range (Euclidean norm of the velocity).
struct ActionBounds {
  double a_min = 0.0;  // m/s
  double a_max = 1.0;  // m/s
};

// One-step reward: negative goal distance plus hard penalties for getting
// within safety_radius of another agent or entering an inflated obstacle.
// Defaults are calibrated so the 0.01-0.13 rationality range spans sluggish
// to near-argmax behavior on the 6 m swap task (see README).
struct RewardParams {
  double goal_weight = 150.0;
  double collision_penalty = 2500.0;
  double obstacle_penalty = 2500.0;
  double safety_radius = 0.25;  // m
};

void validate(const RewardParams& params);
void validate(const Obstacle& obstacle);

bool action_valid(const Action& action, const ActionBounds& bounds);

// Single-integrator step: position += velocity * dt for every agent.
// Throws if the action count mismatches or any action norm is out of bounds.
JointState step(const JointState& state, std::span<const Action> actions,
                const ActionBounds& bounds, double dt);

// r_i(S) = -goal_weight * |p_i - g_i|
//          - collision_penalty * [min_{j != i} |p_i - p_j| < safety_radius]
//          - obstacle_penalty  * [p_i inside any inflated obstacle]
double reward(int agent_index, const JointState& state, const RewardParams& params,
              std::span<const Vec3> goals, std::span<const Obstacle> obstacles);

// Trajectory of length H+1 under the given plans; trajectory[0] is `initial`.
std::vector<JointState> rollout(const JointState& initial,
                                std::span<const ActionSequence> plans,
                                const ActionBounds& bounds, double dt);

// Sum of agent_index's rewards over rollout steps 1..H. The dynamics are
// deterministic, so this is the exact expected utility of the plan profile.
double utility(int agent_index, const JointState& initial,
               std::span<const ActionSequence> plans, const RewardParams& params,
               std::span<const Vec3> goals, std::span<const Obstacle> obstacles,
               const ActionBounds& bounds, double dt);

// Everything needed to score one agent's candidate plans: the shared world
// description minus the per-step state.
struct Game {
  RewardParams reward;
  ActionBounds bounds;
  std::vector<Vec3> goals;  // one per agent
  std::vector<Obstacle> obstacles;
  double dt = 0.25;
};

// Predicted positions of all agents except `skip` over rollout steps 1..H,
// step-major. Plans are beliefs, not executed commands, so no bound checks.
struct OpponentTrack {
  int horizon = 0;
  int count = 0;             // number of opponents
  std::vector<Vec3> positions;  // horizon * count entries

  const Vec3& at(int step, int opponent) const {
    return positions[static_cast<std::size_t>(step) * count + opponent];
  }
};

OpponentTrack predict_opponents(const JointState& state,
                                std::span<const ActionSequence> plans, int skip,
                                double dt);

// Inflated obstacle boxes precomputed for the sampling hot path.
struct InflatedBox {
  Vec3 lo;
  Vec3 hi;
};

std::vector<InflatedBox> inflate(std::span<const Obstacle> obstacles);

// Utility of a single candidate velocity sequence for one agent, with every
// other agent's trajectory frozen. Equivalent to utility() on the combined
// plan profile; kept branch-light because it runs K times per best response.
double utility_vs_opponents(const Vec3& start, std::span<const Vec3> velocities,
                            const OpponentTrack& opponents, const Vec3& goal,
                            const RewardParams& params,
                            std::span<const InflatedBox> boxes, double dt);

}  // namespace brnav

#endif  // BRNAV_WORLD_HPP
