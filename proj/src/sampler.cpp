#include "brnav/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "brnav/numeric.hpp"

namespace brnav {

void validate(const RationalityLevel& level) {
  if (!std::isfinite(level.beta) || level.beta < 0.0) {
    throw std::invalid_argument("rationality level beta must be finite and >= 0");
  }
}

SoftmaxWeights compute_weights(std::span<const double> utilities,
                               const RationalityLevel& level) {
  validate(level);
  const std::size_t k = utilities.size();
  if (k == 0) {
    throw std::invalid_argument("compute_weights: empty utility batch");
  }
  SoftmaxWeights out;
  out.log_weights.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(utilities[i])) {
      throw std::invalid_argument("compute_weights: non-finite utility at sample " +
                                  std::to_string(i));
    }
    out.log_weights[i] = level.beta * utilities[i];
  }
  const double log_z = log_sum_exp(out.log_weights);
  out.weights.resize(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    out.log_weights[i] -= log_z;
    out.weights[i] = std::exp(out.log_weights[i]);
    sum += out.weights[i];
  }
  for (double& w : out.weights) {
    w /= sum;
  }
  return out;
}

std::vector<double> evaluate_batch(const SampleBatch& batch, int agent_index,
                                   const JointState& state,
                                   std::span<const ActionSequence> plans,
                                   const Game& game, int threads) {
  if (agent_index < 0 || agent_index >= state.size()) {
    throw std::invalid_argument("evaluate_batch: agent index out of range");
  }
  if (static_cast<int>(game.goals.size()) != state.size()) {
    throw std::invalid_argument("evaluate_batch: goal count mismatch");
  }
  const OpponentTrack opponents = predict_opponents(state, plans, agent_index, game.dt);
  if (opponents.horizon != batch.horizon) {
    throw std::invalid_argument("evaluate_batch: plan and batch horizons differ");
  }
  const std::vector<InflatedBox> boxes = inflate(game.obstacles);
  const Vec3 start = state.agents[agent_index].position;
  const Vec3 goal = game.goals[agent_index];

  std::vector<double> utilities(batch.count);
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
  for (int k = 0; k < batch.count; ++k) {
    utilities[k] = utility_vs_opponents(start, batch.sequence(k), opponents, goal,
                                        game.reward, boxes, game.dt);
  }
  return utilities;
}

ActionSequence weighted_mean(const SampleBatch& batch,
                             std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != batch.count) {
    throw std::invalid_argument("weighted_mean: weight count mismatch");
  }
  std::vector<Vec3> mean(batch.horizon, Vec3::Zero());
  // Fixed ascending-k accumulation: bit-identical for any thread count.
  std::size_t idx = 0;
  for (int k = 0; k < batch.count; ++k) {
    const double w = weights[k];
    for (int h = 0; h < batch.horizon; ++h) {
      mean[h] += w * batch.velocities[idx++];
    }
  }
  ActionSequence seq;
  seq.actions.reserve(batch.horizon);
  for (const Vec3& v : mean) {
    seq.actions.push_back(Action{v});
  }
  return seq;
}

double kl_from_prior(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("kl_from_prior: empty weights");
  }
  double acc = 0.0;
  for (const double w : weights) {
    if (w > 0.0) {
      acc += w * std::log(w);
    }
  }
  const double kl = std::log(static_cast<double>(weights.size())) + acc;
  return kl > 0.0 ? kl : 0.0;
}

double effective_sample_size(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("effective_sample_size: empty weights");
  }
  double sum_sq = 0.0;
  for (const double w : weights) {
    sum_sq += w * w;
  }
  return 1.0 / sum_sq;
}

WeightedSamples sample_and_weight(int agent_index, const JointState& state,
                                  std::span<const ActionSequence> plans,
                                  const UniformPrior& prior,
                                  const RationalityLevel& level, int count,
                                  const SeededGenerator& gen, const Game& game,
                                  int threads) {
  WeightedSamples out;
  SeededGenerator local = gen;
  out.samples = draw_batch(prior, local, count);
  out.utilities = evaluate_batch(out.samples, agent_index, state, plans, game, threads);
  SoftmaxWeights sw = compute_weights(out.utilities, level);
  out.log_weights = std::move(sw.log_weights);
  out.weights = std::move(sw.weights);
  return out;
}

BestResponse best_response(int agent_index, const JointState& state,
                           std::span<const ActionSequence> plans,
                           const UniformPrior& prior, const RationalityLevel& level,
                           int count, const SeededGenerator& gen, const Game& game,
                           int threads) {
  const WeightedSamples ws = sample_and_weight(agent_index, state, plans, prior,
                                               level, count, gen, game, threads);
  BestResponse response;
  response.plan = weighted_mean(ws.samples, ws.weights);
  response.kl = kl_from_prior(ws.weights);
  response.ess = effective_sample_size(ws.weights);
  return response;
}

}  // namespace brnav
