#include "brnav/prior.hpp"

#include <cmath>
#include <stdexcept>

namespace brnav {

void validate(const UniformPrior& prior) {
  if (!std::isfinite(prior.a_min) || !std::isfinite(prior.a_max) ||
      prior.a_min < 0.0 || prior.a_max < prior.a_min) {
    throw std::invalid_argument("prior requires 0 <= a_min <= a_max, finite");
  }
  if (prior.horizon < 0) {
    throw std::invalid_argument("prior horizon must be >= 0");
  }
}

Action sample_action(const UniformPrior& prior, SeededGenerator& gen) {
  const Vec3 direction = gen.unit_vector();
  const double speed = gen.uniform(prior.a_min, prior.a_max);
  return Action{speed * direction};
}

ActionSequence sample_sequence(const UniformPrior& prior, SeededGenerator& gen) {
  ActionSequence seq;
  seq.actions.reserve(prior.horizon);
  for (int h = 0; h < prior.horizon; ++h) {
    seq.actions.push_back(sample_action(prior, gen));
  }
  return seq;
}

std::vector<ActionSequence> sample_batch(const UniformPrior& prior,
                                         SeededGenerator& gen, int count) {
  if (count < 1) {
    throw std::invalid_argument("sample_batch: count must be >= 1");
  }
  std::vector<ActionSequence> batch;
  batch.reserve(count);
  for (int k = 0; k < count; ++k) {
    batch.push_back(sample_sequence(prior, gen));
  }
  return batch;
}

SampleBatch draw_batch(const UniformPrior& prior, SeededGenerator& gen, int count) {
  if (count < 1) {
    throw std::invalid_argument("draw_batch: count must be >= 1");
  }
  validate(prior);
  SampleBatch batch;
  batch.count = count;
  batch.horizon = prior.horizon;
  batch.velocities.resize(static_cast<std::size_t>(count) * prior.horizon);
  std::size_t idx = 0;
  for (int k = 0; k < count; ++k) {
    for (int h = 0; h < prior.horizon; ++h) {
      batch.velocities[idx++] = sample_action(prior, gen).velocity;
    }
  }
  return batch;
}

}  // namespace brnav
