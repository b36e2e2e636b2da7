#ifndef BRNAV_PRIOR_HPP
#define BRNAV_PRIOR_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "brnav/numeric.hpp"
#include "brnav/world.hpp"

namespace brnav {

// Default policy: speed uniform on [a_min, a_max], direction uniform on the
// unit sphere, i.i.d. per step. a_min == a_max is allowed (point mass speed).
struct UniformPrior {
  double a_min = 0.0;  // m/s
  double a_max = 1.0;  // m/s
  int horizon = 10;
};

void validate(const UniformPrior& prior);

// Deterministic stream of draws, identified by (seed, stream). Substreams are
// derived by mixing a tag into the stream id, so any (run, timestep, agent)
// path maps to a reproducible stream independent of scheduling.
class SeededGenerator {
 public:
  SeededGenerator() : SeededGenerator(0, 0) {}
  SeededGenerator(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream), engine_(mix64(splitmix64(seed), splitmix64(stream))) {}

  SeededGenerator substream(std::uint64_t tag) const {
    return SeededGenerator(seed_, mix64(stream_, tag));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Uniform in [0, 1), 53-bit resolution, engine-defined (not distribution-
  // defined) so the stream is stable across standard library versions.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Marsaglia (1972): rejection on the unit disk, no trigonometry.
  Vec3 unit_vector() {
    while (true) {
      const double u = 2.0 * uniform01() - 1.0;
      const double v = 2.0 * uniform01() - 1.0;
      const double s = u * u + v * v;
      if (s >= 1.0) continue;
      const double f = 2.0 * std::sqrt(1.0 - s);
      return Vec3(u * f, v * f, 1.0 - 2.0 * s);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

Action sample_action(const UniformPrior& prior, SeededGenerator& gen);

ActionSequence sample_sequence(const UniformPrior& prior, SeededGenerator& gen);

// K sequences, drawn as K consecutive sample_sequence calls on the stream.
// Throws if count < 1: an empty proposal set cannot form an estimator.
std::vector<ActionSequence> sample_batch(const UniformPrior& prior,
                                         SeededGenerator& gen, int count);

// Flat storage for the sampling hot path; row k holds sequence k's
// velocities. Draw order is identical to sample_batch.
struct SampleBatch {
  int count = 0;
  int horizon = 0;
  std::vector<Vec3> velocities;  // count * horizon entries, row-major

  std::span<const Vec3> sequence(int k) const {
    return {velocities.data() + static_cast<std::size_t>(k) * horizon,
            static_cast<std::size_t>(horizon)};
  }
};

SampleBatch draw_batch(const UniformPrior& prior, SeededGenerator& gen, int count);

}  // namespace brnav

#endif  // BRNAV_PRIOR_HPP
