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

#ifndef NASHQ_FULL_INFO_HPP_
#define NASHQ_FULL_INFO_HPP_

#include <array>
#include <stdexcept>
#include <utility>

#include "nashq/partial_info.hpp"
#include "nashq/selector.hpp"
#include "nashq/tables.hpp"

namespace nashq {

struct FullInfoResult {
  JointQTable q_1;
  JointQTable q_2;
  StrategyProfile profile;  // per-state selected equilibrium of the final tables
  double max_abs_q_1 = 0.0;
  double max_abs_q_2 = 0.0;
};

// Full-information Nash Q-learning: both joint tables are updated at the
// observed joint action using a single shared per-state equilibrium of the
// current Q matrices (the coupled update needs a common strategy pair).
// Actions are drawn from the selected equilibrium at the current state,
// eps-mixed for coverage.
inline FullInfoResult RunFullInfo(const StochasticGame& game,
                                  LearnOptions options,
                                  const EquilibriumSelector& selector,
                                  std::uint64_t seed) {
  if (options.n_steps < 1) {
    throw std::invalid_argument("RunFullInfo: n_steps must be >= 1");
  }
  if (game.n_actions(0) > kSupportEnumerationGuard ||
      game.n_actions(1) > kSupportEnumerationGuard) {
    throw std::invalid_argument(
        "RunFullInfo: action space exceeds the equilibrium fallback guard");
  }
  if (options.exploration.t_scale <= 0.0) {
    options.exploration.t_scale = static_cast<double>(options.n_steps) / 10.0;
  }

  FullInfoResult result;
  result.q_1 = JointQTable(game.n_states(), game.n_actions(0), game.n_actions(1));
  result.q_2 = JointQTable(game.n_states(), game.n_actions(0), game.n_actions(1));
  VisitCounter visits(static_cast<std::size_t>(game.n_states()) *
                      game.n_actions(0) * game.n_actions(1));

  Rng rng_env(Rng::DeriveSeed(seed, 0));
  std::array<Rng, 2> rng_player = {Rng(Rng::DeriveSeed(seed, 1)),
                                   Rng(Rng::DeriveSeed(seed, 2))};

  int s = game.initial_state();
  for (long long t = 0; t < options.n_steps; ++t) {
    const double epsilon = options.exploration.At(t);
    const NashQResult current =
        NashQValue(result.q_1.Matrix(s), result.q_2.Matrix(s), selector);
    const int a1 = internal::MixedBehavior(current.pi_1, epsilon).Sample(rng_player[0]);
    const int a2 = internal::MixedBehavior(current.pi_2, epsilon).Sample(rng_player[1]);
    const int s_next = game.transition(s, a1, a2).Sample(rng_env);

    const NashQResult next =
        NashQValue(result.q_1.Matrix(s_next), result.q_2.Matrix(s_next), selector);
    const long long count = visits.Increment(result.q_1.Index(s, a1, a2));
    const double alpha = options.schedule.Rate(t, count);

    double& c1 = result.q_1.at(s, a1, a2);
    double& c2 = result.q_2.at(s, a1, a2);
    c1 = (1.0 - alpha) * c1 +
         alpha * (game.reward(0, s, a1, a2) + game.gamma(0) * next.value_1);
    c2 = (1.0 - alpha) * c2 +
         alpha * (game.reward(1, s, a1, a2) + game.gamma(1) * next.value_2);

    result.max_abs_q_1 = std::max(result.max_abs_q_1, result.q_1.MaxAbs());
    result.max_abs_q_2 = std::max(result.max_abs_q_2, result.q_2.MaxAbs());

    if (options.trace) {
      TraceRow row;
      row.t = t;
      row.s = s;
      row.a1 = a1;
      row.a2 = a2;
      row.r1 = game.reward(0, s, a1, a2);
      row.r2 = game.reward(1, s, a1, a2);
      row.alpha = alpha;
      row.epsilon = epsilon;
      row.q1_value = c1;
      row.q2_value = c2;
      options.trace(row);
    }
    s = s_next;
  }

  result.profile.pi_1.reserve(game.n_states());
  result.profile.pi_2.reserve(game.n_states());
  for (int state = 0; state < game.n_states(); ++state) {
    const NashQResult eq =
        NashQValue(result.q_1.Matrix(state), result.q_2.Matrix(state), selector);
    result.profile.pi_1.push_back(eq.pi_1);
    result.profile.pi_2.push_back(eq.pi_2);
  }
  return result;
}

}  // namespace nashq

#endif  // NASHQ_FULL_INFO_HPP_
