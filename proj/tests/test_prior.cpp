#include <doctest.h>

#include <cmath>

#include "brnav/prior.hpp"

using namespace brnav;

TEST_CASE("sample_action: degenerate support yields the zero velocity") {
  UniformPrior prior{0.0, 0.0, 5};
  SeededGenerator gen(1, 0);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_action(prior, gen).velocity.norm() == 0.0);
  }
}

TEST_CASE("sample_action: speed and direction statistics") {
  UniformPrior prior{0.0, 1.0, 1};
  SeededGenerator gen(42, 0);
  const int draws = 1'000'000;
  double speed_sum = 0.0;
  Vec3 dir_sum = Vec3::Zero();
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (int i = 0; i < draws; ++i) {
    const Vec3 v = sample_action(prior, gen).velocity;
    const double speed = v.norm();
    speed_sum += speed;
    if (speed > 0.0) {
      const Vec3 d = v / speed;
      dir_sum += d;
      cov += d * d.transpose();
    }
  }
  CHECK(std::abs(speed_sum / draws - 0.5) < 0.01);
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(dir_sum[a] / draws) < 0.01);
  }
  cov /= draws;
  const Eigen::Matrix3d target = Eigen::Matrix3d::Identity() / 3.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(std::abs(cov(a, b) - target(a, b)) < 0.02);
    }
  }
}

TEST_CASE("sample_action: norms stay within the support") {
  UniformPrior prior{0.3, 0.8, 1};
  SeededGenerator gen(3, 9);
  for (int i = 0; i < 100'000; ++i) {
    const double n = sample_action(prior, gen).velocity.norm();
    CHECK(n >= 0.3 - 1e-12);
    CHECK(n <= 0.8 + 1e-12);
  }
}

TEST_CASE("sample_sequence: horizon and support") {
  SeededGenerator gen(5, 1);
  UniformPrior empty{0.0, 1.0, 0};
  CHECK(sample_sequence(empty, gen).actions.empty());

  UniformPrior prior{0.0, 1.0, 3};
  const ActionSequence seq = sample_sequence(prior, gen);
  REQUIRE(seq.horizon() == 3);
  for (const Action& a : seq.actions) {
    CHECK(a.velocity.norm() <= 1.0 + 1e-12);
  }
}

TEST_CASE("sample_sequence: identical (seed, stream) reproduces the sequence") {
  UniformPrior prior{0.0, 1.0, 8};
  SeededGenerator a(77, 13);
  SeededGenerator b(77, 13);
  const ActionSequence sa = sample_sequence(prior, a);
  const ActionSequence sb = sample_sequence(prior, b);
  for (int h = 0; h < 8; ++h) {
    CHECK(sa.actions[h].velocity == sb.actions[h].velocity);
  }
}

TEST_CASE("sample_batch: singleton equals the first sequence draw") {
  UniformPrior prior{0.0, 1.0, 4};
  SeededGenerator a(9, 2);
  SeededGenerator b(9, 2);
  const auto batch = sample_batch(prior, a, 1);
  const ActionSequence single = sample_sequence(prior, b);
  REQUIRE(batch.size() == 1);
  for (int h = 0; h < 4; ++h) {
    CHECK(batch[0].actions[h].velocity == single.actions[h].velocity);
  }
}

TEST_CASE("sample_batch: rejects an empty request") {
  UniformPrior prior{0.0, 1.0, 4};
  SeededGenerator gen(9, 2);
  CHECK_THROWS_AS(sample_batch(prior, gen, 0), std::invalid_argument);
  CHECK_THROWS_AS(draw_batch(prior, gen, 0), std::invalid_argument);
}

TEST_CASE("sample_batch: batch equals consecutive sequence draws") {
  UniformPrior prior{0.0, 1.0, 5};
  SeededGenerator a(123, 4);
  SeededGenerator b(123, 4);
  const auto batch = sample_batch(prior, a, 40);
  for (int k = 0; k < 40; ++k) {
    const ActionSequence seq = sample_sequence(prior, b);
    for (int h = 0; h < 5; ++h) {
      CHECK(batch[k].actions[h].velocity == seq.actions[h].velocity);
    }
  }
}

TEST_CASE("draw_batch: flat batch matches sample_batch draw for draw") {
  UniformPrior prior{0.0, 1.0, 6};
  SeededGenerator a(55, 8);
  SeededGenerator b(55, 8);
  const auto nested = sample_batch(prior, a, 25);
  const SampleBatch flat = draw_batch(prior, b, 25);
  for (int k = 0; k < 25; ++k) {
    const auto row = flat.sequence(k);
    for (int h = 0; h < 6; ++h) {
      CHECK(nested[k].actions[h].velocity == row[h]);
    }
  }
}

TEST_CASE("sample_batch: distinct substreams give distinct draws") {
  UniformPrior prior{0.0, 1.0, 3};
  SeededGenerator root(2024, 0);
  SeededGenerator a = root.substream(0);
  SeededGenerator b = root.substream(1);
  const auto ba = sample_batch(prior, a, 5);
  const auto bb = sample_batch(prior, b, 5);
  bool any_difference = false;
  for (int k = 0; k < 5 && !any_difference; ++k) {
    for (int h = 0; h < 3 && !any_difference; ++h) {
      any_difference = ba[k].actions[h].velocity != bb[k].actions[h].velocity;
    }
  }
  CHECK(any_difference);
}

TEST_CASE("draw_batch: handles the largest paper budget") {
  UniformPrior prior{0.0, 1.0, 10};
  SeededGenerator gen(1, 1);
  const SampleBatch batch = draw_batch(prior, gen, 500'000);
  CHECK(batch.count == 500'000);
  CHECK(batch.velocities.size() == 5'000'000);
}

TEST_CASE("prior validation") {
  CHECK_THROWS_AS(validate(UniformPrior{-0.1, 1.0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(validate(UniformPrior{0.5, 0.4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(validate(UniformPrior{0.0, 1.0, -1}), std::invalid_argument);
  CHECK_NOTHROW(validate(UniformPrior{0.2, 0.2, 5}));
}
