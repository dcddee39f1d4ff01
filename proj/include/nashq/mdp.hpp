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

#ifndef NASHQ_MDP_HPP_
#define NASHQ_MDP_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nashq/game.hpp"

namespace nashq {

// Single-controller MDP, dense transitions. Small by construction: it is only
// materialized for best-response computations at desk scale.
struct Mdp {
  int n_states = 0;
  int n_actions = 0;
  double gamma = 0.0;
  std::vector<double> reward;             // s * n_actions + a
  std::vector<std::vector<double>> next;  // [s*n_actions+a] -> dense row over S

  double& r(int s, int a) { return reward[s * n_actions + a]; }
  double r(int s, int a) const { return reward[s * n_actions + a]; }
};

// The MDP player i faces when the opponent plays the fixed strategy rows of
// the profile: rewards and transitions averaged over the opponent's mix.
inline Mdp InducedMdp(const StochasticGame& game, const StrategyProfile& profile,
                      int player) {
  const int opponent = 1 - player;
  Mdp mdp;
  mdp.n_states = game.n_states();
  mdp.n_actions = game.n_actions(player);
  mdp.gamma = game.gamma(player);
  mdp.reward.assign(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions, 0.0);
  mdp.next.assign(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions,
                  std::vector<double>());
  const auto& opp_rows = profile.pi(opponent);
  for (int s = 0; s < mdp.n_states; ++s) {
    for (int a = 0; a < mdp.n_actions; ++a) {
      std::vector<double> row(mdp.n_states, 0.0);
      double reward_sum = 0.0;
      for (int b = 0; b < game.n_actions(opponent); ++b) {
        const double w = opp_rows[s][b];
        if (w == 0.0) continue;
        const int a1 = player == 0 ? a : b;
        const int a2 = player == 0 ? b : a;
        reward_sum += w * game.reward(player, s, a1, a2);
        for (const auto& [sn, p] : game.transition(s, a1, a2).entries()) {
          row[sn] += w * p;
        }
      }
      mdp.r(s, a) = reward_sum;
      mdp.next[s * mdp.n_actions + a] = std::move(row);
    }
  }
  return mdp;
}

// Exact value of a deterministic policy, by direct linear solve.
inline std::vector<double> EvaluatePolicy(const Mdp& mdp,
                                          const std::vector<int>& policy) {
  const int n = mdp.n_states;
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs(n);
  for (int s = 0; s < n; ++s) {
    const int a = policy[s];
    rhs(s) = mdp.r(s, a);
    const auto& row = mdp.next[s * mdp.n_actions + a];
    for (int sn = 0; sn < n; ++sn) system(s, sn) -= mdp.gamma * row[sn];
  }
  Eigen::VectorXd v = system.partialPivLu().solve(rhs);
  return std::vector<double>(v.data(), v.data() + n);
}

// Howard policy iteration; finite termination, exact optimum. Returns the
// optimal value function. Improvement requires a strict margin so floating
// point ties cannot cycle.
inline std::vector<double> SolveOptimalValue(const Mdp& mdp,
                                             std::vector<int>* policy_out = nullptr) {
  std::vector<int> policy(mdp.n_states, 0);
  std::vector<double> v = EvaluatePolicy(mdp, policy);
  for (int iter = 0; iter < 10000; ++iter) {
    bool changed = false;
    for (int s = 0; s < mdp.n_states; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      int best_a = policy[s];
      for (int a = 0; a < mdp.n_actions; ++a) {
        const auto& row = mdp.next[s * mdp.n_actions + a];
        double q = mdp.r(s, a);
        for (int sn = 0; sn < mdp.n_states; ++sn) q += mdp.gamma * row[sn] * v[sn];
        if (q > best) {
          best = q;
          best_a = a;
        }
      }
      // keep the incumbent unless strictly better beyond rounding noise
      {
        const auto& row = mdp.next[s * mdp.n_actions + policy[s]];
        double q_cur = mdp.r(s, policy[s]);
        for (int sn = 0; sn < mdp.n_states; ++sn) q_cur += mdp.gamma * row[sn] * v[sn];
        if (best > q_cur + 1e-13 && best_a != policy[s]) {
          policy[s] = best_a;
          changed = true;
        }
      }
    }
    if (!changed) {
      if (policy_out) *policy_out = policy;
      return v;
    }
    v = EvaluatePolicy(mdp, policy);
  }
  throw std::runtime_error("SolveOptimalValue: policy iteration did not terminate");
}

// Optimal Q-function by value iteration to the requested residual. Used as an
// independent oracle against learned tables.
inline std::vector<double> ValueIterationQ(const Mdp& mdp, double tol,
                                           int max_iter = 1000000) {
  std::vector<double> q(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions, 0.0);
  std::vector<double> v(mdp.n_states, 0.0);
  const double stop = tol * (1.0 - mdp.gamma) / (2.0 * mdp.gamma + 1e-300);
  for (int iter = 0; iter < max_iter; ++iter) {
    double change = 0.0;
    for (int s = 0; s < mdp.n_states; ++s) {
      for (int a = 0; a < mdp.n_actions; ++a) {
        const auto& row = mdp.next[s * mdp.n_actions + a];
        double val = mdp.r(s, a);
        for (int sn = 0; sn < mdp.n_states; ++sn) val += mdp.gamma * row[sn] * v[sn];
        change = std::max(change, std::abs(val - q[s * mdp.n_actions + a]));
        q[s * mdp.n_actions + a] = val;
      }
    }
    for (int s = 0; s < mdp.n_states; ++s) {
      double best = q[s * mdp.n_actions];
      for (int a = 1; a < mdp.n_actions; ++a) {
        best = std::max(best, q[s * mdp.n_actions + a]);
      }
      v[s] = best;
    }
    if (change < stop) return q;
  }
  throw std::runtime_error("ValueIterationQ: did not converge");
}

}  // namespace nashq

#endif  // NASHQ_MDP_HPP_
