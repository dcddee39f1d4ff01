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

#ifndef NASHQ_INFERENCE_HPP_
#define NASHQ_INFERENCE_HPP_

#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

#include "nashq/game.hpp"
#include "nashq/partial_info.hpp"
#include "nashq/tables.hpp"

namespace nashq {

// Estimated stationary strategy of the opposing player. States never visited
// carry the uniform prior.
struct OpponentModel {
  enum class Method { kEmFilter, kEmpiricalFrequency };

  std::vector<SimplexVector> pi_hat;
  Method method = Method::kEmFilter;

  static OpponentModel UniformPrior(int n_states, int n_opponent_actions,
                                    Method method) {
    OpponentModel model;
    model.method = method;
    model.pi_hat.assign(n_states, SimplexVector::Uniform(n_opponent_actions));
    return model;
  }
};

// Bayes posterior of the opponent's action given one observed transition:
// beta(a') ~ p(s'|s, a_own, a') * prior(a'). A zero denominator means the
// observed transition is impossible under every action the prior supports
// (model mis-specification); the record is flagged and the prior kept.
inline SimplexVector EmPosterior(const StochasticGame& game, int player,
                                 const TrajectoryRecord& rec,
                                 const SimplexVector& prior,
                                 bool* flagged = nullptr) {
  const int opponent = 1 - player;
  const int n = game.n_actions(opponent);
  if (prior.size() != n) throw std::invalid_argument("EmPosterior: prior size");
  std::vector<double> weights(n);
  double total = 0.0;
  for (int b = 0; b < n; ++b) {
    const int a1 = player == 0 ? rec.a1 : b;
    const int a2 = player == 0 ? b : rec.a2;
    weights[b] = game.transition(rec.s, a1, a2).ProbOf(rec.s_next) * prior[b];
    total += weights[b];
  }
  if (total <= 0.0) {
    if (flagged) *flagged = true;
    return prior;
  }
  if (flagged) *flagged = false;
  for (double& w : weights) w /= total;
  return SimplexVector(std::move(weights));
}

// Observed-data log-likelihood of a history under a candidate opponent
// strategy (transition factors only; the player's own mixing is constant in
// the opponent parameters).
template <typename History>
double ObservedLogLikelihood(const StochasticGame& game, int player,
                             const History& history,
                             const OpponentModel& model) {
  const int opponent = 1 - player;
  // Extended-precision accumulation: near convergence the per-sweep gain is
  // below double rounding noise and the monotonicity assertion needs the sum
  // itself to be trustworthy.
  long double loglik = 0.0L;
  for (const TrajectoryRecord& rec : history) {
    long double p = 0.0L;
    for (int b = 0; b < game.n_actions(opponent); ++b) {
      const int a1 = player == 0 ? rec.a1 : b;
      const int a2 = player == 0 ? b : rec.a2;
      p += static_cast<long double>(
               game.transition(rec.s, a1, a2).ProbOf(rec.s_next)) *
           model.pi_hat[rec.s][b];
    }
    loglik += std::log(std::max(p, 1e-300L));
  }
  return static_cast<double>(loglik);
}

// One EM sweep: per-state average of action posteriors under the current
// estimate. Unvisited states keep the uniform prior.
template <typename History>
OpponentModel EmIterate(const StochasticGame& game, int player,
                        const History& history, const OpponentModel& current) {
  const int opponent = 1 - player;
  const int n = game.n_actions(opponent);
  std::vector<std::vector<double>> sums(game.n_states(),
                                        std::vector<double>(n, 0.0));
  std::vector<long long> visits(game.n_states(), 0);
  for (const TrajectoryRecord& rec : history) {
    const SimplexVector posterior =
        EmPosterior(game, player, rec, current.pi_hat[rec.s]);
    for (int b = 0; b < n; ++b) sums[rec.s][b] += posterior[b];
    ++visits[rec.s];
  }
  OpponentModel next;
  next.method = current.method;
  next.pi_hat.reserve(game.n_states());
  for (int s = 0; s < game.n_states(); ++s) {
    if (visits[s] == 0) {
      next.pi_hat.push_back(SimplexVector::Uniform(n));
      continue;
    }
    std::vector<double> row(n);
    double total = 0.0;
    for (int b = 0; b < n; ++b) total += (row[b] = sums[s][b] / visits[s]);
    // Renormalize away the accumulation drift: the likelihood is first-order
    // sensitive to the row sum, and monotonicity is asserted to 1e-10.
    for (double& v : row) v /= total;
    next.pi_hat.push_back(SimplexVector(std::move(row)));
  }
  return next;
}

struct EmEstimateResult {
  OpponentModel model;
  bool converged = false;
  int iterations = 0;
  std::vector<double> log_likelihoods;  // nondecreasing by EM monotonicity
};

// Full EM from the uniform initializer, stopping on max-norm change < tol.
template <typename History>
EmEstimateResult EmEstimate(const StochasticGame& game, int player,
                            const History& history, double tol = 1e-6,
                            int max_iter = 200) {
  if (tol <= 0.0) throw std::invalid_argument("EmEstimate: tol must be positive");
  const int opponent = 1 - player;
  EmEstimateResult result;
  result.model = OpponentModel::UniformPrior(game.n_states(),
                                             game.n_actions(opponent),
                                             OpponentModel::Method::kEmFilter);
  if (history.begin() == history.end()) {
    result.converged = true;
    return result;
  }
  for (int iter = 0; iter < max_iter; ++iter) {
    result.log_likelihoods.push_back(
        ObservedLogLikelihood(game, player, history, result.model));
    OpponentModel next = EmIterate(game, player, history, result.model);
    double change = 0.0;
    for (int s = 0; s < game.n_states(); ++s) {
      for (int b = 0; b < game.n_actions(opponent); ++b) {
        change = std::max(change,
                          std::abs(next.pi_hat[s][b] - result.model.pi_hat[s][b]));
      }
    }
    result.model = std::move(next);
    result.iterations = iter + 1;
    if (change < tol) {
      result.converged = true;
      break;
    }
  }
  result.log_likelihoods.push_back(
      ObservedLogLikelihood(game, player, history, result.model));
  return result;
}

// Fictitious-play frequency phi: per-state empirical distribution of the
// opponent's observed actions. Needs action visibility, i.e. full
// information about play (not strategy).
template <typename History>
OpponentModel EmpiricalFrequency(const StochasticGame& game, int player,
                                 const History& history) {
  const int opponent = 1 - player;
  const int n = game.n_actions(opponent);
  std::vector<std::vector<double>> counts(game.n_states(),
                                          std::vector<double>(n, 0.0));
  std::vector<long long> visits(game.n_states(), 0);
  for (const TrajectoryRecord& rec : history) {
    const int b = player == 0 ? rec.a2 : rec.a1;
    counts[rec.s][b] += 1.0;
    ++visits[rec.s];
  }
  OpponentModel model;
  model.method = OpponentModel::Method::kEmpiricalFrequency;
  model.pi_hat.reserve(game.n_states());
  for (int s = 0; s < game.n_states(); ++s) {
    if (visits[s] == 0) {
      model.pi_hat.push_back(SimplexVector::Uniform(n));
      continue;
    }
    std::vector<double> row(n);
    for (int b = 0; b < n; ++b) row[b] = counts[s][b] / visits[s];
    model.pi_hat.push_back(SimplexVector(std::move(row)));
  }
  return model;
}

struct InferenceLearnerResult {
  MarginalQTable q_hat;       // model-averaged marginal of the joint estimate
  JointQTable q_joint;        // the learner's joint-shaped table
  OpponentModel model;        // final opponent estimate
  MarginalQTable opponent_q;  // the partial-information opponent's table
  StrategyProfile profile;
  double max_abs_q = 0.0;
  long long flagged_records = 0;  // zero-denominator posteriors
  std::vector<double> model_tv_trace;  // TV(model, empirical truth) per refresh
};

inline constexpr int kModelRefreshCadence = 100;
inline constexpr std::size_t kInferenceHistoryCap = 100000;

// Inference-based learning: the learner (player `player`) keeps a
// joint-shaped table whose opponent coordinate is filled in from the action
// posterior of each observed transition, and bootstraps through the
// model-averaged row max at the successor. The opposing player runs the
// plain partial-information learner. With an uninformative model every
// opponent slice receives the same update and the learner reduces exactly to
// partial-information Q-learning.
//
// Precondition (checked): the inferring player's reward depends only on
// (state, own action) for the kEmFilter method, so rewards leak nothing
// about the opponent.
inline InferenceLearnerResult RunInferenceLearner(
    const StochasticGame& game, OpponentModel::Method method,
    LearnOptions options, std::uint64_t seed, int player = 0,
    const std::vector<SimplexVector>* fixed_opponent = nullptr) {
  if (options.n_steps < 1) {
    throw std::invalid_argument("RunInferenceLearner: n_steps must be >= 1");
  }
  const int opponent = 1 - player;
  const int n_own = game.n_actions(player);
  const int n_opp = game.n_actions(opponent);
  if (method == OpponentModel::Method::kEmFilter) {
    for (int s = 0; s < game.n_states(); ++s) {
      for (int a = 0; a < n_own; ++a) {
        for (int b = 1; b < n_opp; ++b) {
          const int a1 = player == 0 ? a : b;
          const int a2 = player == 0 ? b : a;
          const int a1_0 = player == 0 ? a : 0;
          const int a2_0 = player == 0 ? 0 : a;
          if (std::abs(game.reward(player, s, a1, a2) -
                       game.reward(player, s, a1_0, a2_0)) > 1e-12) {
            throw std::invalid_argument(
                "RunInferenceLearner: reward must depend only on (state, own "
                "action) for EM filtering");
          }
        }
      }
    }
  }
  if (options.exploration.t_scale <= 0.0) {
    options.exploration.t_scale = static_cast<double>(options.n_steps) / 10.0;
  }

  InferenceLearnerResult result;
  result.q_joint = player == 0
                       ? JointQTable(game.n_states(), n_own, n_opp)
                       : JointQTable(game.n_states(), n_opp, n_own);
  result.model = OpponentModel::UniformPrior(game.n_states(), n_opp, method);
  result.opponent_q = MarginalQTable(game.n_states(), n_opp);
  VisitCounter own_visits(static_cast<std::size_t>(game.n_states()) * n_own);
  VisitCounter opp_visits(static_cast<std::size_t>(game.n_states()) * n_opp);
  std::deque<TrajectoryRecord> history;

  Rng rng_env(Rng::DeriveSeed(seed, 0));
  Rng rng_own(Rng::DeriveSeed(seed, player == 0 ? 1 : 2));
  Rng rng_opp(Rng::DeriveSeed(seed, player == 0 ? 2 : 1));

  auto joint_at = [&](int s, int own, int opp_a) -> double& {
    return player == 0 ? result.q_joint.at(s, own, opp_a)
                       : result.q_joint.at(s, opp_a, own);
  };
  auto model_averaged_row = [&](int s) {
    std::vector<double> row(n_own, 0.0);
    for (int a = 0; a < n_own; ++a) {
      for (int b = 0; b < n_opp; ++b) {
        row[a] += result.model.pi_hat[s][b] * joint_at(s, a, b);
      }
    }
    return row;
  };

  std::vector<TrajectoryRecord> true_actions;  // for the TV diagnostic
  int s = game.initial_state();
  for (long long t = 0; t < options.n_steps; ++t) {
    const double epsilon = options.exploration.At(t);

    auto own_br = ComputeBestResponseSet(model_averaged_row(s), options.tie_tol);
    const int a_own = internal::MixedBehavior(own_br.canonical_strategy, epsilon)
                          .Sample(rng_own);

    int a_opp;
    if (fixed_opponent) {
      a_opp = (*fixed_opponent)[s].Sample(rng_opp);
    } else {
      auto opp_br =
          ComputeBestResponseSet(result.opponent_q.Row(s), options.tie_tol);
      a_opp = internal::MixedBehavior(opp_br.canonical_strategy, epsilon)
                  .Sample(rng_opp);
    }

    const int a1 = player == 0 ? a_own : a_opp;
    const int a2 = player == 0 ? a_opp : a_own;
    const int s_next = game.transition(s, a1, a2).Sample(rng_env);

    TrajectoryRecord rec{t, s, a1, a2, game.reward(0, s, a1, a2),
                         game.reward(1, s, a1, a2), s_next};

    // Opponent action weight per slice. EM filtering uses the one-step Bayes
    // posterior; fictitious play observes the action outright.
    SimplexVector slice_weights = SimplexVector::PointMass(a_opp, n_opp);
    if (method == OpponentModel::Method::kEmFilter) {
      bool flagged = false;
      slice_weights = EmPosterior(game, player, rec, result.model.pi_hat[s], &flagged);
      if (flagged) ++result.flagged_records;
    }

    const long long count = own_visits.Increment(
        static_cast<std::size_t>(s) * n_own + a_own);
    const double alpha = options.schedule.Rate(t, count);
    const auto next_row = model_averaged_row(s_next);
    const double next_best = *std::max_element(next_row.begin(), next_row.end());
    const double own_reward = player == 0 ? rec.r1 : rec.r2;
    const double target = own_reward + game.gamma(player) * next_best;

    // Per-slice rates are scaled so the most plausible slice moves at alpha;
    // a flat posterior therefore updates every slice at alpha, matching the
    // partial-information recursion on the model-averaged table.
    double max_weight = 0.0;
    for (int b = 0; b < n_opp; ++b) max_weight = std::max(max_weight, slice_weights[b]);
    for (int b = 0; b < n_opp; ++b) {
      const double rate = alpha * slice_weights[b] / max_weight;
      if (rate <= 0.0) continue;
      double& cell = joint_at(s, a_own, b);
      cell = (1.0 - rate) * cell + rate * target;
    }
    result.max_abs_q = std::max(result.max_abs_q, result.q_joint.MaxAbs());

    // Opposing player: plain partial-information update.
    if (!fixed_opponent) {
      const double opp_reward = player == 0 ? rec.r2 : rec.r1;
      const long long opp_count = opp_visits.Increment(
          static_cast<std::size_t>(s) * n_opp + a_opp);
      const double opp_alpha = options.schedule.Rate(t, opp_count);
      PartialInfoUpdate(result.opponent_q, s, a_opp, opp_reward,
                        result.opponent_q.RowMax(s_next), opp_alpha,
                        game.gamma(opponent));
    }

    history.push_back(rec);
    if (history.size() > kInferenceHistoryCap) history.pop_front();
    true_actions.push_back(rec);

    if (method == OpponentModel::Method::kEmpiricalFrequency) {
      result.model = EmpiricalFrequency(game, player, history);
    } else if ((t + 1) % kModelRefreshCadence == 0) {
      result.model = EmEstimate(game, player, history).model;
      // Diagnostic only: distance to the opponent's realized frequencies.
      const OpponentModel truth = EmpiricalFrequency(game, player, true_actions);
      double tv = 0.0;
      for (int state = 0; state < game.n_states(); ++state) {
        tv = std::max(tv,
                      result.model.pi_hat[state].TotalVariation(truth.pi_hat[state]));
      }
      result.model_tv_trace.push_back(tv);
    }

    if (options.trace) {
      TraceRow row;
      row.t = t;
      row.s = s;
      row.a1 = a1;
      row.a2 = a2;
      row.r1 = rec.r1;
      row.r2 = rec.r2;
      row.alpha = alpha;
      row.epsilon = epsilon;
      row.q1_value = joint_at(s, a_own, a_opp);
      options.trace(row);
    }
    s = s_next;
  }

  result.q_hat = MarginalQTable(game.n_states(), n_own);
  for (int state = 0; state < game.n_states(); ++state) {
    const auto row = model_averaged_row(state);
    for (int a = 0; a < n_own; ++a) result.q_hat.at(state, a) = row[a];
  }
  result.profile.pi_1.reserve(game.n_states());
  result.profile.pi_2.reserve(game.n_states());
  for (int state = 0; state < game.n_states(); ++state) {
    auto own = ComputeBestResponseSet(result.q_hat.Row(state), options.tie_tol)
                   .canonical_strategy;
    auto opp = fixed_opponent
                   ? (*fixed_opponent)[state]
                   : ComputeBestResponseSet(result.opponent_q.Row(state),
                                            options.tie_tol)
                         .canonical_strategy;
    result.profile.pi_1.push_back(player == 0 ? own : opp);
    result.profile.pi_2.push_back(player == 0 ? opp : own);
  }
  return result;
}

}  // namespace nashq

#endif  // NASHQ_INFERENCE_HPP_
