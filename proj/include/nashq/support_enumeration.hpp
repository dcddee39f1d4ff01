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

#ifndef NASHQ_SUPPORT_ENUMERATION_HPP_
#define NASHQ_SUPPORT_ENUMERATION_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nashq/bimatrix.hpp"

namespace nashq {

inline constexpr int kSupportEnumerationGuard = 9;
inline constexpr double kEquilibriumGap = 1e-9;

namespace internal {

// Subsets of {0..n-1}, ordered by size then lexicographically.
inline std::vector<std::vector<int>> SupportsBySize(int n, int max_size) {
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= std::min(n, max_size); ++size) {
    std::vector<int> combo(size);
    for (int i = 0; i < size; ++i) combo[i] = i;
    while (true) {
      out.push_back(combo);
      int i = size - 1;
      while (i >= 0 && combo[i] == n - size + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int k = i + 1; k < size; ++k) combo[k] = combo[k - 1] + 1;
    }
  }
  return out;
}

// Solves for the opponent-facing mixture making every support row of
// `payoff` indifferent at a common value: payoff(I, J) * y = v, sum y = 1.
// Least squares handles non-square support pairs; a nonzero residual, a
// negative weight, or a profitable off-support row rejects the candidate.
inline std::optional<std::vector<double>> IndifferentMixture(
    const Eigen::MatrixXd& payoff, const std::vector<int>& own_support,
    const std::vector<int>& opp_support) {
  constexpr double tol = 1e-8;
  const int k = static_cast<int>(own_support.size());
  const int l = static_cast<int>(opp_support.size());
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(k + 1, l + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < l; ++c) {
      system(r, c) = payoff(own_support[r], opp_support[c]);
    }
    system(r, l) = -1.0;  // common value v
  }
  for (int c = 0; c < l; ++c) system(k, c) = 1.0;
  rhs(k) = 1.0;

  Eigen::VectorXd sol =
      system.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  if ((system * sol - rhs).lpNorm<Eigen::Infinity>() > tol) return std::nullopt;

  const double v = sol(l);
  std::vector<double> mixture(payoff.cols(), 0.0);
  for (int c = 0; c < l; ++c) {
    if (sol(c) < -tol) return std::nullopt;
    mixture[opp_support[c]] = std::max(sol(c), 0.0);
  }
  // Off-support rows must not beat the support value.
  for (int r = 0; r < payoff.rows(); ++r) {
    double payoff_r = 0.0;
    for (int c = 0; c < l; ++c) {
      payoff_r += payoff(r, opp_support[c]) * mixture[opp_support[c]];
    }
    bool in_support = false;
    for (int i : own_support) in_support |= (i == r);
    if (!in_support && payoff_r > v + tol) return std::nullopt;
  }
  return mixture;
}

}  // namespace internal

// Exhaustive equilibrium search over support pairs, used both as the
// fallback behind Lemke-Howson and as an independent test oracle. Complete
// for nondegenerate games up to the given support size; every returned pair
// is certified at gap <= 1e-9.
inline std::vector<std::pair<SimplexVector, SimplexVector>> SupportEnumeration(
    const BimatrixGame& game, int max_support = kSupportEnumerationGuard) {
  const int m = game.rows();
  const int n = game.cols();
  if (m > kSupportEnumerationGuard || n > kSupportEnumerationGuard) {
    throw std::invalid_argument("SupportEnumeration: action space too large");
  }
  if (max_support < 1) {
    throw std::invalid_argument("SupportEnumeration: max_support < 1");
  }
  std::vector<std::pair<SimplexVector, SimplexVector>> results;
  const auto row_supports = internal::SupportsBySize(m, max_support);
  const auto col_supports = internal::SupportsBySize(n, max_support);
  for (const auto& support_1 : row_supports) {
    for (const auto& support_2 : col_supports) {
      auto y = internal::IndifferentMixture(game.payoff_1, support_1, support_2);
      if (!y) continue;
      auto x = internal::IndifferentMixture(game.payoff_2.transpose(),
                                            support_2, support_1);
      if (!x) continue;
      SimplexVector sx(std::move(*x));
      SimplexVector sy(std::move(*y));
      if (VerifyBimatrixNash(game, sx, sy) > kEquilibriumGap) continue;
      bool duplicate = false;
      for (const auto& [ex, ey] : results) {
        double dist = 0.0;
        for (int i = 0; i < m; ++i) dist = std::max(dist, std::abs(ex[i] - sx[i]));
        for (int j = 0; j < n; ++j) dist = std::max(dist, std::abs(ey[j] - sy[j]));
        if (dist < 1e-8) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) results.emplace_back(std::move(sx), std::move(sy));
    }
  }
  return results;
}

}  // namespace nashq

#endif  // NASHQ_SUPPORT_ENUMERATION_HPP_
