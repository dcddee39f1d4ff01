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

#ifndef NASHQ_GAME_HPP_
#define NASHQ_GAME_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nashq/rng.hpp"
#include "nashq/simplex.hpp"

namespace nashq {

// Sparse distribution over states. Kept sparse so that large deterministic
// games (Gridworld has thousands of states) stay cheap; dense games simply
// carry full support.
class SparseDist {
 public:
  SparseDist() = default;

  // Entries are (state, probability) pairs; probabilities must form a
  // simplex over the listed support.
  explicit SparseDist(std::vector<std::pair<int, double>> entries)
      : entries_(std::move(entries)) {
    double sum = 0.0;
    for (auto& [s, p] : entries_) {
      if (p < -kSimplexRenormTolerance || s < 0) {
        throw std::invalid_argument("SparseDist: bad entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexRenormTolerance) {
      throw std::invalid_argument("SparseDist: probabilities do not sum to 1");
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      for (auto& [s, p] : entries_) p /= sum;
    }
    std::sort(entries_.begin(), entries_.end());
  }

  static SparseDist PointMass(int state) { return SparseDist({{state, 1.0}}); }

  static SparseDist FromDense(const std::vector<double>& row) {
    std::vector<std::pair<int, double>> entries;
    for (int s = 0; s < static_cast<int>(row.size()); ++s) {
      if (row[s] != 0.0) entries.emplace_back(s, row[s]);
    }
    return SparseDist(std::move(entries));
  }

  const std::vector<std::pair<int, double>>& entries() const {
    return entries_;
  }

  double ProbOf(int state) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), state,
        [](const auto& e, int s) { return e.first < s; });
    return (it != entries_.end() && it->first == state) ? it->second : 0.0;
  }

  std::vector<double> Dense(int n_states) const {
    std::vector<double> row(n_states, 0.0);
    for (const auto& [s, p] : entries_) row.at(s) = p;
    return row;
  }

  int Sample(Rng& rng) const {
    const double u = rng.Uniform();
    double cumulative = 0.0;
    for (const auto& [s, p] : entries_) {
      cumulative += p;
      if (u < cumulative) return s;
    }
    return entries_.back().first;
  }

 private:
  std::vector<std::pair<int, double>> entries_;
};

// The 2-player tabular stochastic game <S, A1, A2, r1, r2, p> with per-player
// discount factors. States and actions are dense integer ids. Immutable after
// construction and safe to share across threads.
class StochasticGame {
 public:
  StochasticGame(int n_states, int n_actions_1, int n_actions_2,
                 std::vector<double> reward_1, std::vector<double> reward_2,
                 std::vector<SparseDist> transition, double gamma_1,
                 double gamma_2)
      : n_states_(n_states),
        n_actions_1_(n_actions_1),
        n_actions_2_(n_actions_2),
        reward_1_(std::move(reward_1)),
        reward_2_(std::move(reward_2)),
        transition_(std::move(transition)),
        gamma_1_(gamma_1),
        gamma_2_(gamma_2) {
    if (n_states <= 0 || n_actions_1 <= 0 || n_actions_2 <= 0) {
      throw std::invalid_argument("StochasticGame: nonpositive dimension");
    }
    const std::size_t cells = static_cast<std::size_t>(n_states) *
                              n_actions_1 * n_actions_2;
    if (reward_1_.size() != cells || reward_2_.size() != cells ||
        transition_.size() != cells) {
      throw std::invalid_argument("StochasticGame: table shape mismatch");
    }
    if (!(gamma_1 > 0.0 && gamma_1 < 1.0 && gamma_2 > 0.0 && gamma_2 < 1.0)) {
      throw std::invalid_argument("StochasticGame: gamma outside (0,1)");
    }
    max_abs_reward_ = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      if (!std::isfinite(reward_1_[i]) || !std::isfinite(reward_2_[i])) {
        throw std::invalid_argument("StochasticGame: non-finite reward");
      }
      max_abs_reward_ = std::max(
          {max_abs_reward_, std::abs(reward_1_[i]), std::abs(reward_2_[i])});
    }
    for (const auto& dist : transition_) {
      for (const auto& [s, p] : dist.entries()) {
        if (s >= n_states) {
          throw std::invalid_argument("StochasticGame: transition off-state");
        }
      }
    }
  }

  int n_states() const { return n_states_; }
  int n_actions(int player) const {
    return player == 0 ? n_actions_1_ : n_actions_2_;
  }
  double gamma(int player) const { return player == 0 ? gamma_1_ : gamma_2_; }
  // M = max_i ||r^i||, the reward bound behind the Q-table bound M/(1-gamma).
  double max_abs_reward() const { return max_abs_reward_; }

  std::size_t CellIndex(int s, int a1, int a2) const {
    return (static_cast<std::size_t>(s) * n_actions_1_ + a1) * n_actions_2_ +
           a2;
  }

  double reward(int player, int s, int a1, int a2) const {
    const auto& r = player == 0 ? reward_1_ : reward_2_;
    return r[CellIndex(s, a1, a2)];
  }
  const SparseDist& transition(int s, int a1, int a2) const {
    return transition_[CellIndex(s, a1, a2)];
  }

  const std::vector<double>& reward_table(int player) const {
    return player == 0 ? reward_1_ : reward_2_;
  }
  const std::vector<SparseDist>& transition_table() const {
    return transition_;
  }

  // Episodic games flag absorbing terminal states; learning bootstraps zero
  // there and resets to initial_state.
  bool IsTerminal(int s) const {
    return !terminal_.empty() && terminal_[s];
  }
  bool IsEpisodic() const { return !terminal_.empty(); }
  int initial_state() const { return initial_state_; }

  void SetEpisodic(std::vector<bool> terminal, int initial_state) {
    if (static_cast<int>(terminal.size()) != n_states_) {
      throw std::invalid_argument("SetEpisodic: terminal mask size mismatch");
    }
    terminal_ = std::move(terminal);
    initial_state_ = initial_state;
  }

  const std::string& metadata() const { return metadata_; }
  void SetMetadata(std::string text) { metadata_ = std::move(text); }

 private:
  int n_states_;
  int n_actions_1_;
  int n_actions_2_;
  std::vector<double> reward_1_;
  std::vector<double> reward_2_;
  std::vector<SparseDist> transition_;
  double gamma_1_;
  double gamma_2_;
  double max_abs_reward_;
  std::vector<bool> terminal_;
  int initial_state_ = 0;
  std::string metadata_;
};

// Stationary strategy pair; row s of pi(i) is the mixed action at state s.
struct StrategyProfile {
  std::vector<SimplexVector> pi_1;
  std::vector<SimplexVector> pi_2;

  const std::vector<SimplexVector>& pi(int player) const {
    return player == 0 ? pi_1 : pi_2;
  }

  static StrategyProfile Uniform(const StochasticGame& game) {
    StrategyProfile profile;
    profile.pi_1.assign(game.n_states(), SimplexVector::Uniform(game.n_actions(0)));
    profile.pi_2.assign(game.n_states(), SimplexVector::Uniform(game.n_actions(1)));
    return profile;
  }

  void Validate(const StochasticGame& game) const {
    if (static_cast<int>(pi_1.size()) != game.n_states() ||
        static_cast<int>(pi_2.size()) != game.n_states()) {
      throw std::invalid_argument("StrategyProfile: state count mismatch");
    }
    for (const auto& row : pi_1) {
      if (row.size() != game.n_actions(0)) {
        throw std::invalid_argument("StrategyProfile: pi_1 row size mismatch");
      }
    }
    for (const auto& row : pi_2) {
      if (row.size() != game.n_actions(1)) {
        throw std::invalid_argument("StrategyProfile: pi_2 row size mismatch");
      }
    }
  }
};

struct TrajectoryRecord {
  long long t = 0;
  int s = 0;
  int a1 = 0;
  int a2 = 0;
  double r1 = 0.0;
  double r2 = 0.0;
  int s_next = 0;
};

// One environment step: independent action draws from the profile rows, then
// a state transition. Pure given (inputs, RNG state).
inline TrajectoryRecord Step(const StochasticGame& game, int s,
                             const StrategyProfile& profile, Rng& rng,
                             long long t = 0) {
  if (s < 0 || s >= game.n_states()) {
    throw std::invalid_argument("Step: state out of range");
  }
  TrajectoryRecord rec;
  rec.t = t;
  rec.s = s;
  rec.a1 = profile.pi_1[s].Sample(rng);
  rec.a2 = profile.pi_2[s].Sample(rng);
  rec.r1 = game.reward(0, s, rec.a1, rec.a2);
  rec.r2 = game.reward(1, s, rec.a1, rec.a2);
  rec.s_next = game.transition(s, rec.a1, rec.a2).Sample(rng);
  return rec;
}

}  // namespace nashq

#endif  // NASHQ_GAME_HPP_
