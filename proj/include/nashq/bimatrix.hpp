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

#ifndef NASHQ_BIMATRIX_HPP_
#define NASHQ_BIMATRIX_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nashq/simplex.hpp"

namespace nashq {

inline constexpr double kTieTolerance = 1e-9;

// One-shot two-player game: payoff_1(a1, a2), payoff_2(a1, a2).
struct BimatrixGame {
  Eigen::MatrixXd payoff_1;
  Eigen::MatrixXd payoff_2;

  BimatrixGame(Eigen::MatrixXd p1, Eigen::MatrixXd p2)
      : payoff_1(std::move(p1)), payoff_2(std::move(p2)) {
    if (payoff_1.rows() != payoff_2.rows() || payoff_1.cols() != payoff_2.cols()) {
      throw std::invalid_argument("BimatrixGame: shape mismatch");
    }
  }

  int rows() const { return static_cast<int>(payoff_1.rows()); }
  int cols() const { return static_cast<int>(payoff_1.cols()); }
};

// All mixed strategies maximizing pi . q_row, represented by the argmax set
// and the canonical (uniform-over-ties) element.
struct BestResponseSet {
  std::vector<int> argmax_indices;
  SimplexVector canonical_strategy;
};

inline BestResponseSet ComputeBestResponseSet(const std::vector<double>& q_row,
                                              double tie_tol = kTieTolerance) {
  if (q_row.empty()) throw std::invalid_argument("best response: empty row");
  if (tie_tol < 0.0) throw std::invalid_argument("best response: negative tie_tol");
  const double best = *std::max_element(q_row.begin(), q_row.end());
  BestResponseSet set;
  for (int a = 0; a < static_cast<int>(q_row.size()); ++a) {
    if (q_row[a] >= best - tie_tol) set.argmax_indices.push_back(a);
  }
  std::vector<double> weights(q_row.size(), 0.0);
  for (int a : set.argmax_indices) {
    weights[a] = 1.0 / static_cast<double>(set.argmax_indices.size());
  }
  set.canonical_strategy = SimplexVector(std::move(weights));
  return set;
}

// Exact epsilon-Nash gap of a strategy pair: the larger player's best pure
// deviation payoff minus their equilibrium payoff. gap <= tol certifies an
// eps-Nash point with eps = gap.
inline double VerifyBimatrixNash(const BimatrixGame& game,
                                 const SimplexVector& x,
                                 const SimplexVector& y) {
  if (x.size() != game.rows() || y.size() != game.cols()) {
    throw std::invalid_argument("VerifyBimatrixNash: dimension mismatch");
  }
  Eigen::VectorXd xv(game.rows()), yv(game.cols());
  for (int i = 0; i < game.rows(); ++i) xv(i) = x[i];
  for (int j = 0; j < game.cols(); ++j) yv(j) = y[j];
  const Eigen::VectorXd row_payoffs = game.payoff_1 * yv;        // per pure a1
  const Eigen::VectorXd col_payoffs = game.payoff_2.transpose() * xv;  // per pure a2
  const double v1 = xv.dot(row_payoffs);
  const double v2 = yv.dot(col_payoffs);
  return std::max(row_payoffs.maxCoeff() - v1, col_payoffs.maxCoeff() - v2);
}

// Cells that are simultaneously a column-wise max for player 1 and a row-wise
// max for player 2, within 1e-12.
inline std::vector<std::pair<int, int>> PureNashEnumeration(
    const BimatrixGame& game) {
  constexpr double tol = 1e-12;
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < game.rows(); ++i) {
    for (int j = 0; j < game.cols(); ++j) {
      const double col_max = game.payoff_1.col(j).maxCoeff();
      const double row_max = game.payoff_2.row(i).maxCoeff();
      if (game.payoff_1(i, j) >= col_max - tol &&
          game.payoff_2(i, j) >= row_max - tol) {
        cells.emplace_back(i, j);
      }
    }
  }
  return cells;
}

}  // namespace nashq

#endif  // NASHQ_BIMATRIX_HPP_
