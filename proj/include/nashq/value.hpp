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

#ifndef NASHQ_VALUE_HPP_
#define NASHQ_VALUE_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nashq/game.hpp"

namespace nashq {

// Above this size the discounted linear system is solved by iterating the
// contraction instead of a direct factorization.
inline constexpr int kDirectSolveMaxStates = 2000;
inline constexpr double kValueSolveTolerance = 1e-10;

// Strategy-averaged reward r_pi(s) for one player.
inline std::vector<double> AveragedReward(const StochasticGame& game,
                                          const StrategyProfile& profile,
                                          int player) {
  std::vector<double> r(game.n_states(), 0.0);
  for (int s = 0; s < game.n_states(); ++s) {
    double sum = 0.0;
    for (int a1 = 0; a1 < game.n_actions(0); ++a1) {
      const double p1 = profile.pi_1[s][a1];
      if (p1 == 0.0) continue;
      for (int a2 = 0; a2 < game.n_actions(1); ++a2) {
        const double w = p1 * profile.pi_2[s][a2];
        if (w == 0.0) continue;
        sum += w * game.reward(player, s, a1, a2);
      }
    }
    r[s] = sum;
  }
  return r;
}

// One application of v -> r_pi + gamma * P_pi v, using the sparse kernel.
inline std::vector<double> ApplyProfileBellman(
    const StochasticGame& game, const StrategyProfile& profile, int player,
    const std::vector<double>& r_pi, const std::vector<double>& v) {
  std::vector<double> out(game.n_states(), 0.0);
  const double gamma = game.gamma(player);
  for (int s = 0; s < game.n_states(); ++s) {
    double acc = 0.0;
    for (int a1 = 0; a1 < game.n_actions(0); ++a1) {
      const double p1 = profile.pi_1[s][a1];
      if (p1 == 0.0) continue;
      for (int a2 = 0; a2 < game.n_actions(1); ++a2) {
        const double w = p1 * profile.pi_2[s][a2];
        if (w == 0.0) continue;
        double ev = 0.0;
        for (const auto& [sn, p] : game.transition(s, a1, a2).entries()) {
          ev += p * v[sn];
        }
        acc += w * ev;
      }
    }
    out[s] = r_pi[s] + gamma * acc;
  }
  return out;
}

// v^i(s, pi^1, pi^2): exact discounted value of the fixed profile, from the
// linear system v = r_pi + gamma_i P_pi v. Direct solve at desk scale,
// contraction iteration beyond kDirectSolveMaxStates.
inline std::vector<double> ValueOfProfile(const StochasticGame& game,
                                          const StrategyProfile& profile,
                                          int player) {
  profile.Validate(game);
  const int n = game.n_states();
  const double gamma = game.gamma(player);
  const std::vector<double> r_pi = AveragedReward(game, profile, player);

  if (n <= kDirectSolveMaxStates) {
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
    for (int s = 0; s < n; ++s) {
      for (int a1 = 0; a1 < game.n_actions(0); ++a1) {
        const double p1 = profile.pi_1[s][a1];
        if (p1 == 0.0) continue;
        for (int a2 = 0; a2 < game.n_actions(1); ++a2) {
          const double w = p1 * profile.pi_2[s][a2];
          if (w == 0.0) continue;
          for (const auto& [sn, p] : game.transition(s, a1, a2).entries()) {
            system(s, sn) -= gamma * w * p;
          }
        }
      }
    }
    Eigen::VectorXd rhs(n);
    for (int s = 0; s < n; ++s) rhs(s) = r_pi[s];
    Eigen::VectorXd v = system.partialPivLu().solve(rhs);
    const double residual = (system * v - rhs).lpNorm<Eigen::Infinity>();
    if (residual > kValueSolveTolerance) {
      throw std::runtime_error("ValueOfProfile: direct solve residual too large");
    }
    return std::vector<double>(v.data(), v.data() + n);
  }

  std::vector<double> v(n, 0.0);
  const double stop = kValueSolveTolerance * (1.0 - gamma);
  for (int iter = 0; iter < 1000000; ++iter) {
    std::vector<double> next = ApplyProfileBellman(game, profile, player, r_pi, v);
    double change = 0.0;
    for (int s = 0; s < n; ++s) change = std::max(change, std::abs(next[s] - v[s]));
    v = std::move(next);
    if (change < stop) return v;
  }
  throw std::runtime_error("ValueOfProfile: contraction iteration did not converge");
}

}  // namespace nashq

#endif  // NASHQ_VALUE_HPP_
