// Copyright 2026 the nashq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "nashq/game.hpp"
#include "nashq/rng.hpp"
#include "nashq/serialization.hpp"
#include "nashq/simplex.hpp"
#include "nashq/value.hpp"

namespace nashq {
namespace {

StochasticGame OneStateGame(double reward, double gamma) {
  return StochasticGame(1, 1, 1, {reward}, {reward},
                        {SparseDist::PointMass(0)}, gamma, gamma);
}

// Two states, 2x2 actions, seeded random rewards and transitions.
StochasticGame SmallRandomGame(std::uint64_t seed) {
  Rng rng(seed);
  const int n_states = 2, na = 2;
  std::vector<double> r1, r2;
  std::vector<SparseDist> trans;
  for (int s = 0; s < n_states; ++s) {
    for (int a1 = 0; a1 < na; ++a1) {
      for (int a2 = 0; a2 < na; ++a2) {
        r1.push_back(rng.Uniform());
        r2.push_back(rng.Uniform());
        std::vector<double> row(n_states);
        double sum = 0.0;
        for (auto& p : row) sum += (p = rng.Uniform());
        for (auto& p : row) p /= sum;
        trans.push_back(SparseDist::FromDense(row));
      }
    }
  }
  return StochasticGame(n_states, na, na, r1, r2, trans, 0.9, 0.8);
}

TEST_SUITE_BEGIN("core");

TEST_CASE("simplex construction validates and renormalizes") {
  CHECK_THROWS(SimplexVector({0.5, 0.6}));
  CHECK_THROWS(SimplexVector({-0.1, 1.1}));
  CHECK_THROWS(SimplexVector(std::vector<double>{}));
  SimplexVector near({0.5, 0.5 + 5e-10});
  double sum = 0.0;
  for (int i = 0; i < near.size(); ++i) sum += near[i];
  CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("sample_from point masses") {
  Rng rng(7);
  CHECK(SimplexVector({1.0}).Sample(rng) == 0);
  CHECK(SimplexVector({0.0, 1.0, 0.0}).Sample(rng) == 1);
}

TEST_CASE("sample_from matches counting oracle on a fair coin") {
  Rng rng(12345);
  SimplexVector coin({0.5, 0.5});
  const int n = 100000;
  int heads = 0;
  for (int i = 0; i < n; ++i) heads += coin.Sample(rng) == 0 ? 1 : 0;
  CHECK(std::abs(heads / static_cast<double>(n) - 0.5) < 0.01);
}

TEST_CASE("empirical distribution converges in total variation") {
  Rng rng(99);
  std::vector<double> weights = {0.05, 0.1, 0.15, 0.2, 0.25, 0.25};
  SimplexVector dist(weights);
  const int n = 100000;
  std::vector<double> counts(weights.size(), 0.0);
  for (int i = 0; i < n; ++i) counts[dist.Sample(rng)] += 1.0 / n;
  CHECK(dist.TotalVariation(SimplexVector(counts)) < 0.02);
}

TEST_CASE("rng determinism: identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.NextU64() == b.NextU64());
}

TEST_CASE("step on deterministic game returns the unique successor") {
  // Two states, point-mass strategies, deterministic transition 0 -> 1.
  std::vector<SparseDist> trans = {SparseDist::PointMass(1),
                                   SparseDist::PointMass(0)};
  StochasticGame game(2, 1, 1, {1.0, 2.0}, {3.0, 4.0}, trans, 0.9, 0.9);
  StrategyProfile profile = StrategyProfile::Uniform(game);
  Rng rng(0);
  auto rec = Step(game, 0, profile, rng);
  CHECK(rec.s == 0);
  CHECK(rec.a1 == 0);
  CHECK(rec.a2 == 0);
  CHECK(rec.r1 == 1.0);
  CHECK(rec.r2 == 3.0);
  CHECK(rec.s_next == 1);
}

TEST_CASE("step on 1-state game stays put") {
  auto game = OneStateGame(1.0, 0.9);
  auto profile = StrategyProfile::Uniform(game);
  Rng rng(5);
  for (int i = 0; i < 10; ++i) CHECK(Step(game, 0, profile, rng).s_next == 0);
}

TEST_CASE("step matches a hand-rolled sampler with the same rng stream") {
  auto game = SmallRandomGame(3);
  auto profile = StrategyProfile::Uniform(game);
  Rng rng(77), oracle(77);
  int s = 0;
  for (int t = 0; t < 50; ++t) {
    auto rec = Step(game, s, profile, rng, t);
    // Replay oracle: same draw order (a1, a2, s').
    const int a1 = profile.pi_1[s].Sample(oracle);
    const int a2 = profile.pi_2[s].Sample(oracle);
    const int sn = game.transition(s, a1, a2).Sample(oracle);
    CHECK(rec.a1 == a1);
    CHECK(rec.a2 == a2);
    CHECK(rec.s_next == sn);
    CHECK(std::abs(rec.r1) <= game.max_abs_reward());
    CHECK(std::abs(rec.r2) <= game.max_abs_reward());
    s = rec.s_next;
  }
}

TEST_CASE("value_of_profile: geometric series on 1-state game") {
  auto game = OneStateGame(1.0, 0.9);
  auto profile = StrategyProfile::Uniform(game);
  auto v = ValueOfProfile(game, profile, 0);
  CHECK(v[0] == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("value_of_profile: zero rewards give zero value") {
  auto game = OneStateGame(0.0, 0.5);
  auto profile = StrategyProfile::Uniform(game);
  CHECK(ValueOfProfile(game, profile, 0)[0] == 0.0);
  CHECK(ValueOfProfile(game, profile, 1)[0] == 0.0);
}

TEST_CASE("value_of_profile matches Monte-Carlo rollouts") {
  auto game = SmallRandomGame(11);
  auto profile = StrategyProfile::Uniform(game);
  auto v = ValueOfProfile(game, profile, 0);
  const double gamma = game.gamma(0);
  const double m = game.max_abs_reward();
  int horizon = 1;
  while (std::pow(gamma, horizon) * m / (1.0 - gamma) >= 1e-6) ++horizon;

  Rng rng(2024);
  const int episodes = 100000;
  double mean = 0.0, m2 = 0.0;
  for (int e = 1; e <= episodes; ++e) {
    int s = 0;
    double total = 0.0, discount = 1.0;
    for (int t = 0; t < horizon; ++t) {
      auto rec = Step(game, s, profile, rng);
      total += discount * rec.r1;
      discount *= gamma;
      s = rec.s_next;
    }
    const double delta = total - mean;
    mean += delta / e;
    m2 += delta * (total - mean);
  }
  const double stderr_mc = std::sqrt(m2 / (episodes - 1) / episodes);
  CHECK(std::abs(mean - v[0]) < 3.0 * stderr_mc + 1e-6);
}

TEST_CASE("value bound ||v|| <= M/(1-gamma)") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto game = SmallRandomGame(seed);
    auto profile = StrategyProfile::Uniform(game);
    for (int player = 0; player < 2; ++player) {
      const double bound =
          game.max_abs_reward() / (1.0 - game.gamma(player)) + 1e-9;
      for (double v : ValueOfProfile(game, profile, player)) {
        CHECK(std::abs(v) <= bound);
      }
    }
  }
}

TEST_CASE("game json round-trip is lossless") {
  auto game = SmallRandomGame(21);
  auto j = GameToJson(game);
  auto restored = GameFromJson(j);
  CHECK(restored.n_states() == game.n_states());
  CHECK(restored.gamma(0) == game.gamma(0));
  for (int s = 0; s < game.n_states(); ++s) {
    for (int a1 = 0; a1 < game.n_actions(0); ++a1) {
      for (int a2 = 0; a2 < game.n_actions(1); ++a2) {
        CHECK(restored.reward(0, s, a1, a2) == game.reward(0, s, a1, a2));
        CHECK(restored.reward(1, s, a1, a2) == game.reward(1, s, a1, a2));
        for (int sn = 0; sn < game.n_states(); ++sn) {
          CHECK(restored.transition(s, a1, a2).ProbOf(sn) ==
                game.transition(s, a1, a2).ProbOf(sn));
        }
      }
    }
  }
  // And the serialized form itself is stable.
  CHECK(GameToJson(restored).dump() == j.dump());
}

TEST_CASE("game validation rejects bad inputs") {
  CHECK_THROWS(StochasticGame(1, 1, 1, {1.0}, {1.0},
                              {SparseDist::PointMass(0)}, 1.2, 0.9));
  CHECK_THROWS(StochasticGame(1, 1, 1, {1.0}, {1.0, 2.0},
                              {SparseDist::PointMass(0)}, 0.9, 0.9));
  CHECK_THROWS(StochasticGame(1, 1, 1, {1.0 / 0.0}, {1.0},
                              {SparseDist::PointMass(0)}, 0.9, 0.9));
}

TEST_SUITE_END();

}  // namespace
}  // namespace nashq
