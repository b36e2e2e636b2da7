#include "brnav/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace brnav {

void validate(const SolverConfig& config) {
  if (config.max_iterations < 1) {
    throw std::invalid_argument("solver max_iterations must be >= 1");
  }
  if (!(config.convergence_tolerance > 0.0)) {
    throw std::invalid_argument("solver convergence_tolerance must be > 0");
  }
  if (config.samples_per_response < 1) {
    throw std::invalid_argument("solver samples_per_response must be >= 1");
  }
  if (config.threads < 1) {
    throw std::invalid_argument("solver threads must be >= 1");
  }
}

double convergence_metric(const StrategyProfile& previous,
                          const StrategyProfile& current) {
  if (previous.plans.size() != current.plans.size()) {
    throw std::invalid_argument("convergence_metric: profile sizes differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < current.plans.size(); ++i) {
    const ActionSequence& a = previous.plans[i];
    const ActionSequence& b = current.plans[i];
    if (a.horizon() != b.horizon()) {
      throw std::invalid_argument("convergence_metric: plan horizons differ");
    }
    if (a.horizon() == 0) continue;
    double acc = 0.0;
    for (int h = 0; h < a.horizon(); ++h) {
      acc += (a.actions[h].velocity - b.actions[h].velocity).norm();
    }
    worst = std::max(worst, acc / a.horizon());
  }
  return worst;
}

StrategyProfile solve(const JointState& state,
                      std::span<const RationalityLevel> betas,
                      const UniformPrior& prior, const Game& game,
                      const SolverConfig& config, const SeededGenerator& gen,
                      const SolveOptions& options) {
  const int n = state.size();
  if (n < 1) {
    throw std::invalid_argument("solve: at least one agent required");
  }
  if (static_cast<int>(betas.size()) != n) {
    throw std::invalid_argument("solve: one rationality level per agent required");
  }
  if (static_cast<int>(game.goals.size()) != n) {
    throw std::invalid_argument("solve: one goal per agent required");
  }
  validate(config);
  validate(prior);
  for (const RationalityLevel& level : betas) {
    validate(level);
  }

  std::vector<int> order = options.update_order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<std::uint64_t> tags = options.stream_tags;
  if (tags.empty()) {
    tags.resize(n);
    std::iota(tags.begin(), tags.end(), 0);
  }
  if (static_cast<int>(order.size()) != n || static_cast<int>(tags.size()) != n) {
    throw std::invalid_argument("solve: options must cover every agent");
  }
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) {
      if (sorted[i] != i) {
        throw std::invalid_argument("solve: update_order must be a permutation");
      }
    }
  }

  // One proposal batch per agent, reused across sweeps.
  std::vector<SampleBatch> batches;
  batches.reserve(n);
  for (int i = 0; i < n; ++i) {
    SeededGenerator agent_gen = gen.substream(tags[i]);
    batches.push_back(draw_batch(prior, agent_gen, config.samples_per_response));
  }

  StrategyProfile profile;
  profile.plans.assign(n, ActionSequence{std::vector<Action>(prior.horizon)});
  profile.diagnostics.assign(n, AgentDiagnostics{});

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    const std::vector<ActionSequence> previous = profile.plans;
    for (const int i : order) {
      try {
        const std::vector<double> utilities = evaluate_batch(
            batches[i], i, state, profile.plans, game, config.threads);
        const SoftmaxWeights sw = compute_weights(utilities, betas[i]);
        profile.plans[i] = weighted_mean(batches[i], sw.weights);
        profile.diagnostics[i].kl = kl_from_prior(sw.weights);
        profile.diagnostics[i].ess = effective_sample_size(sw.weights);
      } catch (const std::invalid_argument& e) {
        throw SolveError(i, iteration, e.what());
      }
    }
    profile.iterations = iteration;

    StrategyProfile before;
    before.plans = previous;
    profile.final_metric = convergence_metric(before, profile);
    profile.metric_history.push_back(profile.final_metric);
    if (profile.final_metric < config.convergence_tolerance) {
      profile.converged = true;
      break;
    }
  }
  return profile;
}

}  // namespace brnav
