#ifndef BRNAV_SAMPLER_HPP
#define BRNAV_SAMPLER_HPP

#include <span>
#include <vector>

#include "brnav/prior.hpp"
#include "brnav/world.hpp"

namespace brnav {

// beta = 0 reproduces the prior; beta -> inf concentrates on the utility
// argmax. Dual of the KL budget between prior and optimized policy.
struct RationalityLevel {
  double beta = 0.0;
};

void validate(const RationalityLevel& level);

// Softmax over beta * utility, normalized over the batch.
// log_weights are logits minus log-sum-exp; weights additionally renormalize
// the exponentials so they sum to 1 up to round-off.
struct SoftmaxWeights {
  std::vector<double> log_weights;
  std::vector<double> weights;
};

// weights_k proportional to exp(beta * utilities_k), computed in log space.
// Throws on an empty batch or any non-finite utility.
SoftmaxWeights compute_weights(std::span<const double> utilities,
                               const RationalityLevel& level);

// Proposal batch with its scores and normalized importance weights.
struct WeightedSamples {
  SampleBatch samples;
  std::vector<double> utilities;
  std::vector<double> log_weights;
  std::vector<double> weights;
};

// Utility of every batch row for `agent_index`, holding all other agents to
// their current plans. plans[agent_index] is ignored. Rows are independent,
// so evaluation may fan out over `threads`; each result lands in its own
// slot and no cross-row reduction happens here, which keeps the output
// identical for any thread count.
std::vector<double> evaluate_batch(const SampleBatch& batch, int agent_index,
                                   const JointState& state,
                                   std::span<const ActionSequence> plans,
                                   const Game& game, int threads = 1);

// Per-step weighted average of the batch, sum_k w_k * a_k.
ActionSequence weighted_mean(const SampleBatch& batch,
                             std::span<const double> weights);

// KL(weighted empirical || uniform empirical) on the sample set, in nats:
// log K + sum_k w_k log w_k, with 0 log 0 = 0. Zero for uniform weights,
// log K when a single sample carries all mass.
double kl_from_prior(std::span<const double> weights);

// 1 / sum_k w_k^2, in [1, K]; weight-degeneracy diagnostic.
double effective_sample_size(std::span<const double> weights);

struct BestResponse {
  ActionSequence plan;  // expected optimal action sequence
  double kl = 0.0;      // nats, realized divergence from the prior
  double ess = 0.0;
};

// Bounded-rational best response of one agent to the others' fixed plans:
// draw K sequences from the prior, score them, softmax-weight by rationality,
// and return the weighted mean sequence with its divergence diagnostics.
BestResponse best_response(int agent_index, const JointState& state,
                           std::span<const ActionSequence> plans,
                           const UniformPrior& prior, const RationalityLevel& level,
                           int count, const SeededGenerator& gen, const Game& game,
                           int threads = 1);

// best_response with the intermediate batch retained, for diagnostics and
// estimator studies.
WeightedSamples sample_and_weight(int agent_index, const JointState& state,
                                  std::span<const ActionSequence> plans,
                                  const UniformPrior& prior,
                                  const RationalityLevel& level, int count,
                                  const SeededGenerator& gen, const Game& game,
                                  int threads = 1);

}  // namespace brnav

#endif  // BRNAV_SAMPLER_HPP
