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

#ifndef NASHQ_ENVS_HPP_
#define NASHQ_ENVS_HPP_

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashq/bimatrix.hpp"
#include "nashq/game.hpp"
#include "nashq/rng.hpp"

namespace nashq {

// Correlated random stochastic game: r1 i.i.d. uniform, r2 a convex
// combination of r1 and fresh uniform noise, transition rows proportional to
// uniform draws.
struct RandomGameSpec {
  int d1 = 5;
  int d2 = 7;
  int d_s = 10;
  double h = 0.8;
  double gamma_1 = 0.9;
  double gamma_2 = 0.8;
  std::uint64_t seed = 0;

  void Validate() const {
    if (d1 < 1 || d2 < 1 || d_s < 1) {
      throw std::invalid_argument("RandomGameSpec: dimensions must be positive");
    }
    if (h < 0.0 || h > 1.0) {
      throw std::invalid_argument("RandomGameSpec: h must lie in [0,1]");
    }
    if (gamma_1 <= 0.0 || gamma_1 >= 1.0 || gamma_2 <= 0.0 || gamma_2 >= 1.0) {
      throw std::invalid_argument("RandomGameSpec: gammas must lie in (0,1)");
    }
  }
};

inline StochasticGame GenerateRandomGame(const RandomGameSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  std::vector<double> r1, r2;
  std::vector<SparseDist> trans;
  const std::size_t cells =
      static_cast<std::size_t>(spec.d_s) * spec.d1 * spec.d2;
  r1.reserve(cells);
  r2.reserve(cells);
  trans.reserve(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const double u1 = rng.Uniform();
    r1.push_back(u1);
    r2.push_back(spec.h * u1 + (1.0 - spec.h) * rng.Uniform());
    std::vector<double> row(spec.d_s);
    double sum = 0.0;
    for (auto& p : row) sum += (p = rng.Uniform());
    for (auto& p : row) p /= sum;
    trans.push_back(SparseDist::FromDense(row));
  }
  return StochasticGame(spec.d_s, spec.d1, spec.d2, r1, r2, trans, spec.gamma_1,
                        spec.gamma_2);
}

// Two-agent pursuit Gridworld. A state is the pair of agent locations plus
// one absorbing terminal; moves are deterministic and simultaneous. Reaching
// the own target pays reward_goal and ends the episode; moving off the map
// or into a conflict (same destination cell, or a swap-through) bounces the
// offender(s) back with reward_collision.
struct GridworldSpec {
  int width = 9;
  int height = 9;
  int start_1 = 0;       // bottom-left (x=0, y=0), location index y*width+x
  int start_2 = 8;       // bottom-right
  int target_1 = 80;     // top-right
  int target_2 = 72;     // top-left
  double reward_goal = 10.0;
  double reward_collision = -0.5;
  double reward_step = 0.0;
  int max_episode_len = 200;
  double gamma_1 = 0.9;
  double gamma_2 = 0.9;

  int n_locations() const { return width * height; }

  void Validate() const {
    if (width < 2 || height < 2) {
      throw std::invalid_argument("GridworldSpec: grid too small");
    }
    for (int loc : {start_1, start_2, target_1, target_2}) {
      if (loc < 0 || loc >= n_locations()) {
        throw std::invalid_argument("GridworldSpec: cell out of bounds");
      }
    }
    if (start_1 == start_2) {
      throw std::invalid_argument("GridworldSpec: agents must start apart");
    }
  }
};

namespace internal {

// Actions in the fixed order {Left, Right, Up, Down}; returns -1 off-map.
inline int GridMove(const GridworldSpec& spec, int loc, int action) {
  const int x = loc % spec.width;
  const int y = loc / spec.width;
  switch (action) {
    case 0: return x == 0 ? -1 : loc - 1;
    case 1: return x == spec.width - 1 ? -1 : loc + 1;
    case 2: return y == spec.height - 1 ? -1 : loc + spec.width;
    case 3: return y == 0 ? -1 : loc - spec.width;
    default: throw std::invalid_argument("GridMove: bad action");
  }
}

inline std::string GridworldMapText(const GridworldSpec& spec) {
  std::ostringstream out;
  out << "gridworld " << spec.width << "x" << spec.height
      << " (top row first; 1/2 = starts, A/B = targets)\n";
  for (int y = spec.height - 1; y >= 0; --y) {
    for (int x = 0; x < spec.width; ++x) {
      const int loc = y * spec.width + x;
      char c = '.';
      if (loc == spec.target_1) c = 'A';
      if (loc == spec.target_2) c = 'B';
      if (loc == spec.start_1) c = '1';
      if (loc == spec.start_2) c = '2';
      out << c;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace internal

inline StochasticGame BuildGridworld(const GridworldSpec& spec = {}) {
  spec.Validate();
  const int n_loc = spec.n_locations();
  const int n_states = n_loc * n_loc + 1;  // + absorbing terminal
  const int terminal = n_loc * n_loc;
  const int na = 4;

  std::vector<double> r1(static_cast<std::size_t>(n_states) * na * na, 0.0);
  std::vector<double> r2(r1.size(), 0.0);
  std::vector<SparseDist> trans(r1.size(), SparseDist::PointMass(terminal));

  for (int l1 = 0; l1 < n_loc; ++l1) {
    for (int l2 = 0; l2 < n_loc; ++l2) {
      const int s = l1 * n_loc + l2;
      for (int m1 = 0; m1 < na; ++m1) {
        for (int m2 = 0; m2 < na; ++m2) {
          const std::size_t cell =
              (static_cast<std::size_t>(s) * na + m1) * na + m2;
          int p1 = internal::GridMove(spec, l1, m1);
          int p2 = internal::GridMove(spec, l2, m2);
          bool bounce_1 = p1 < 0;
          bool bounce_2 = p2 < 0;
          if (bounce_1) p1 = l1;
          if (bounce_2) p2 = l2;
          // conflict resolution after wall bounces: same destination cell or
          // a swap-through puts both agents back
          if (p1 == p2 || (p1 == l2 && p2 == l1)) {
            bounce_1 = bounce_2 = true;
            p1 = l1;
            p2 = l2;
          }
          const bool arrive_1 = !bounce_1 && p1 == spec.target_1;
          const bool arrive_2 = !bounce_2 && p2 == spec.target_2;
          r1[cell] = arrive_1 ? spec.reward_goal
                              : (bounce_1 ? spec.reward_collision : spec.reward_step);
          r2[cell] = arrive_2 ? spec.reward_goal
                              : (bounce_2 ? spec.reward_collision : spec.reward_step);
          trans[cell] = SparseDist::PointMass(
              (arrive_1 || arrive_2) ? terminal : p1 * n_loc + p2);
        }
      }
    }
  }
  // terminal cells already absorb with zero reward (initialized above)

  StochasticGame game(n_states, na, na, r1, r2, trans, spec.gamma_1,
                      spec.gamma_2);
  std::vector<bool> terminal_mask(n_states, false);
  terminal_mask[terminal] = true;
  game.SetEpisodic(std::move(terminal_mask),
                   spec.start_1 * n_loc + spec.start_2);
  game.SetMetadata(internal::GridworldMapText(spec));
  return game;
}

// Observation maps that hide the other agent's location; used for the
// blind-player ablation. Terminal maps to an extra observation id.
inline std::vector<int> GridworldOwnLocationObservation(const GridworldSpec& spec,
                                                        int player) {
  const int n_loc = spec.n_locations();
  std::vector<int> obs(n_loc * n_loc + 1, n_loc);
  for (int l1 = 0; l1 < n_loc; ++l1) {
    for (int l2 = 0; l2 < n_loc; ++l2) {
      obs[l1 * n_loc + l2] = player == 0 ? l1 : l2;
    }
  }
  return obs;
}

// State-independent rewards over randomly mixing transitions: learned
// strategies may differ across states even though no state matters for the
// payoff.
inline StochasticGame BuildSpuriousGame(const BimatrixGame& base, int n_states,
                                        std::uint64_t seed, double gamma_1 = 0.9,
                                        double gamma_2 = 0.8) {
  if (n_states < 1) {
    throw std::invalid_argument("BuildSpuriousGame: n_states must be positive");
  }
  Rng rng(seed);
  const int na1 = static_cast<int>(base.payoff_1.rows());
  const int na2 = static_cast<int>(base.payoff_1.cols());
  std::vector<double> r1, r2;
  std::vector<SparseDist> trans;
  for (int s = 0; s < n_states; ++s) {
    for (int a1 = 0; a1 < na1; ++a1) {
      for (int a2 = 0; a2 < na2; ++a2) {
        r1.push_back(base.payoff_1(a1, a2));
        r2.push_back(base.payoff_2(a1, a2));
        std::vector<double> row(n_states);
        double sum = 0.0;
        for (auto& p : row) sum += (p = rng.Uniform());
        for (auto& p : row) p /= sum;
        trans.push_back(SparseDist::FromDense(row));
      }
    }
  }
  return StochasticGame(n_states, na1, na2, r1, r2, trans, gamma_1, gamma_2);
}

struct CanonicalGame {
  std::string name;
  BimatrixGame bimatrix;
  // known equilibrium strategies for documentation and tests (one of possibly
  // several for battle_of_sexes)
  std::vector<double> equilibrium_row;
  std::vector<double> equilibrium_col;
};

inline std::vector<CanonicalGame> CanonicalGames() {
  std::vector<CanonicalGame> games;
  {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << 1, -1, -1, 1;
    b = -a;
    games.push_back({"matching_pennies", BimatrixGame(a, b), {0.5, 0.5}, {0.5, 0.5}});
  }
  {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << -1, -3, 0, -2;
    b = a.transpose();
    games.push_back({"prisoners_dilemma", BimatrixGame(a, b), {0.0, 1.0}, {0.0, 1.0}});
  }
  {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << 2, 0, 0, 1;
    b << 1, 0, 0, 2;
    games.push_back({"battle_of_sexes", BimatrixGame(a, b), {1.0, 0.0}, {1.0, 0.0}});
  }
  {
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
    games.push_back({"zero", BimatrixGame(z, z), {0.5, 0.5}, {0.5, 0.5}});
  }
  return games;
}

// The repeated-game (1-state) embedding of a bimatrix fixture.
inline StochasticGame RepeatedGame(const BimatrixGame& base, double gamma_1,
                                   double gamma_2) {
  const int na1 = static_cast<int>(base.payoff_1.rows());
  const int na2 = static_cast<int>(base.payoff_1.cols());
  std::vector<double> r1, r2;
  for (int a1 = 0; a1 < na1; ++a1) {
    for (int a2 = 0; a2 < na2; ++a2) {
      r1.push_back(base.payoff_1(a1, a2));
      r2.push_back(base.payoff_2(a1, a2));
    }
  }
  std::vector<SparseDist> trans(static_cast<std::size_t>(na1) * na2,
                                SparseDist::PointMass(0));
  return StochasticGame(1, na1, na2, r1, r2, trans, gamma_1, gamma_2);
}

}  // namespace nashq

#endif  // NASHQ_ENVS_HPP_
