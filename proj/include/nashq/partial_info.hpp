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

#ifndef NASHQ_PARTIAL_INFO_HPP_
#define NASHQ_PARTIAL_INFO_HPP_

#include <array>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nashq/bimatrix.hpp"
#include "nashq/game.hpp"
#include "nashq/rng.hpp"
#include "nashq/schedule.hpp"
#include "nashq/tables.hpp"

namespace nashq {

// Per-step diagnostics handed to an optional trace sink. alpha is the rate
// applied by player 1 at this step; q1_value / q2_value are the fresh values
// of the two updated table entries (together with (s, a_i) they determine
// the whole table stream, which the information-barrier test relies on).
struct TraceRow {
  long long t = 0;
  int s = 0;
  int a1 = 0;
  int a2 = 0;
  double r1 = 0.0;
  double r2 = 0.0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double delta_1 = 0.0;
  double delta_2 = 0.0;
  double q1_value = 0.0;
  double q2_value = 0.0;
};

struct LearnOptions {
  LearningRateSchedule schedule;
  EpsilonSchedule exploration;
  long long n_steps = 0;     // infinite-horizon budget (ignored when episodic)
  long long n_episodes = 0;  // episodic budget (games with terminal states)
  int max_episode_len = 200;
  double tie_tol = kTieTolerance;
  // Observation maps: learner i updates a table over observation ids
  // obs_i[s]. Empty means full state observation. The Gridworld blind-player
  // ablation maps the joint state down to the agent's own location.
  std::vector<int> obs_1;
  std::vector<int> obs_2;
  // Players acting uniformly at random regardless of their table (baseline
  // opponents); their reported strategy is uniform.
  std::array<bool, 2> force_uniform = {false, false};
  long long checkpoint_every = 0;  // snapshot cadence in steps; 0 = off
  std::function<void(const TraceRow&)> trace;
};

// Eq.-style single-table update: only (s, a) changes.
inline void PartialInfoUpdate(MarginalQTable& table, int s, int a, double reward,
                              double next_best, double alpha, double gamma) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("PartialInfoUpdate: alpha outside (0,1]");
  }
  double& cell = table.at(s, a);
  cell = (1.0 - alpha) * cell + alpha * (reward + gamma * next_best);
}

struct PartialInfoResult {
  MarginalQTable q_1;
  MarginalQTable q_2;
  StrategyProfile profile;  // canonical greedy profile over environment states
  std::vector<std::pair<long long, std::array<MarginalQTable, 2>>> checkpoints;
  double max_abs_q_1 = 0.0;  // running maxima, for the boundedness invariant
  double max_abs_q_2 = 0.0;
  long long episodes_completed = 0;
  long long cap_events = 0;  // episodes cut off at max_episode_len
};

namespace internal {

inline std::vector<int> IdentityObservation(int n_states) {
  std::vector<int> obs(n_states);
  for (int s = 0; s < n_states; ++s) obs[s] = s;
  return obs;
}

inline int ObservationCount(const std::vector<int>& obs) {
  int n = 0;
  for (int o : obs) n = std::max(n, o + 1);
  return n;
}

// (1-eps) * canonical best response + eps * uniform.
inline SimplexVector MixedBehavior(const SimplexVector& best_response,
                                   double epsilon) {
  std::vector<double> w(best_response.size());
  const double u = epsilon / best_response.size();
  for (int a = 0; a < best_response.size(); ++a) {
    w[a] = (1.0 - epsilon) * best_response[a] + u;
  }
  return SimplexVector(std::move(w));
}

}  // namespace internal

// The partial-information Nash Q-learning loop. Each player observes only
// the state, its own action and its own reward; the two table updates are
// functions of disjoint information (the information barrier), which the
// tests exercise by varying one player's action seed while holding the
// environment stream fixed.
//
// Episodic games reset to the initial state on terminal entry and bootstrap
// zero there; infinite-horizon games run a single chain of n_steps.
inline PartialInfoResult RunPartialInfo(const StochasticGame& game,
                                        LearnOptions options,
                                        std::uint64_t seed) {
  const bool episodic = game.IsEpisodic();
  if (!episodic && options.n_steps < 1) {
    throw std::invalid_argument("RunPartialInfo: n_steps must be >= 1");
  }
  if (episodic && options.n_episodes < 1) {
    throw std::invalid_argument("RunPartialInfo: n_episodes must be >= 1");
  }
  if (options.obs_1.empty()) options.obs_1 = internal::IdentityObservation(game.n_states());
  if (options.obs_2.empty()) options.obs_2 = internal::IdentityObservation(game.n_states());
  if (options.exploration.t_scale <= 0.0) {
    const double horizon = episodic ? static_cast<double>(options.n_episodes)
                                    : static_cast<double>(options.n_steps);
    options.exploration.t_scale = horizon / 10.0;
  }

  const std::array<const std::vector<int>*, 2> obs = {&options.obs_1, &options.obs_2};
  const std::array<int, 2> n_obs = {internal::ObservationCount(options.obs_1),
                                    internal::ObservationCount(options.obs_2)};

  PartialInfoResult result;
  result.q_1 = MarginalQTable(n_obs[0], game.n_actions(0));
  result.q_2 = MarginalQTable(n_obs[1], game.n_actions(1));
  std::array<MarginalQTable*, 2> tables = {&result.q_1, &result.q_2};
  std::array<VisitCounter, 2> visits = {
      VisitCounter(static_cast<std::size_t>(n_obs[0]) * game.n_actions(0)),
      VisitCounter(static_cast<std::size_t>(n_obs[1]) * game.n_actions(1))};

  Rng rng_env(Rng::DeriveSeed(seed, 0));
  std::array<Rng, 2> rng_player = {Rng(Rng::DeriveSeed(seed, 1)),
                                   Rng(Rng::DeriveSeed(seed, 2))};

  int s = game.initial_state();
  long long t = 0;
  long long episode = 0;
  int episode_len = 0;
  const long long total_steps =
      episodic ? options.n_episodes * static_cast<long long>(options.max_episode_len)
               : options.n_steps;

  while (true) {
    if (episodic ? episode >= options.n_episodes : t >= options.n_steps) break;
    const double epsilon = options.exploration.At(episodic ? episode : t);

    std::array<int, 2> actions;
    for (int i = 0; i < 2; ++i) {
      const int o = (*obs[i])[s];
      auto br = ComputeBestResponseSet(tables[i]->Row(o), options.tie_tol);
      const double eps_i = options.force_uniform[i] ? 1.0 : epsilon;
      actions[i] = internal::MixedBehavior(br.canonical_strategy, eps_i)
                       .Sample(rng_player[i]);
    }
    const int a1 = actions[0], a2 = actions[1];
    const int s_next = game.transition(s, a1, a2).Sample(rng_env);
    const std::array<double, 2> rewards = {game.reward(0, s, a1, a2),
                                           game.reward(1, s, a1, a2)};

    ++episode_len;
    const bool terminal = episodic && game.IsTerminal(s_next);
    const bool capped = episodic && !terminal && episode_len >= options.max_episode_len;

    TraceRow row;
    row.t = t;
    row.s = s;
    row.a1 = a1;
    row.a2 = a2;
    row.r1 = rewards[0];
    row.r2 = rewards[1];
    row.epsilon = epsilon;

    for (int i = 0; i < 2; ++i) {
      const int o = (*obs[i])[s];
      const int o_next = (*obs[i])[s_next];
      // Canonical uniform-over-ties selection makes pi(s') . Q(s') equal the
      // row max, so the bootstrap is the max directly. Terminal (and capped)
      // successors bootstrap zero.
      const double next_best =
          (terminal || capped) ? 0.0 : tables[i]->RowMax(o_next);
      const long long count =
          visits[i].Increment(static_cast<std::size_t>(o) * game.n_actions(i) +
                              actions[i]);
      const double alpha = options.schedule.Rate(t, count);
      const double before = tables[i]->at(o, actions[i]);
      PartialInfoUpdate(*tables[i], o, actions[i], rewards[i], next_best, alpha,
                        game.gamma(i));
      const double after = tables[i]->at(o, actions[i]);
      if (i == 0) {
        row.alpha = alpha;
        row.delta_1 = after - before;
        row.q1_value = after;
      } else {
        row.delta_2 = after - before;
        row.q2_value = after;
      }
    }
    result.max_abs_q_1 = std::max(result.max_abs_q_1, result.q_1.MaxAbs());
    result.max_abs_q_2 = std::max(result.max_abs_q_2, result.q_2.MaxAbs());

    if (options.trace) options.trace(row);
    ++t;
    if (options.checkpoint_every > 0 && t % options.checkpoint_every == 0) {
      result.checkpoints.push_back({t, {result.q_1, result.q_2}});
    }

    if (terminal || capped) {
      ++episode;
      if (capped) ++result.cap_events;
      episode_len = 0;
      s = game.initial_state();
    } else {
      s = s_next;
    }
    if (t > total_steps) break;  // defensive; cannot trigger with the cap
  }
  result.episodes_completed = episode;

  result.profile.pi_1.reserve(game.n_states());
  result.profile.pi_2.reserve(game.n_states());
  for (int state = 0; state < game.n_states(); ++state) {
    result.profile.pi_1.push_back(
        options.force_uniform[0]
            ? SimplexVector::Uniform(game.n_actions(0))
            : ComputeBestResponseSet(result.q_1.Row(options.obs_1[state]),
                                     options.tie_tol)
                  .canonical_strategy);
    result.profile.pi_2.push_back(
        options.force_uniform[1]
            ? SimplexVector::Uniform(game.n_actions(1))
            : ComputeBestResponseSet(result.q_2.Row(options.obs_2[state]),
                                     options.tie_tol)
                  .canonical_strategy);
  }
  return result;
}

}  // namespace nashq

#endif  // NASHQ_PARTIAL_INFO_HPP_
