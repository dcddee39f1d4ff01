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

#ifndef NASHQ_LEMKE_HOWSON_HPP_
#define NASHQ_LEMKE_HOWSON_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nashq/bimatrix.hpp"
#include "nashq/simplex.hpp"

namespace nashq {

namespace internal {

inline constexpr double kPivotEps = 1e-10;

// A labeled tableau for one player's strategy polytope. Columns are indexed
// by label 0..m+n-1 plus a trailing RHS column; the initial slack columns
// double as the lexicographic perturbation used for the min-ratio test, which
// keeps degenerate games from cycling.
class LhTableau {
 public:
  LhTableau(Eigen::MatrixXd data, std::vector<int> basis,
            std::vector<int> perturbation_cols)
      : data_(std::move(data)),
        basis_(std::move(basis)),
        perturbation_cols_(std::move(perturbation_cols)) {}

  bool HasBasicLabel(int label) const {
    for (int b : basis_) {
      if (b == label) return true;
    }
    return false;
  }

  // Pivots label `entering` into the basis. Returns the leaving label, or
  // nullopt on ray termination.
  std::optional<int> Pivot(int entering) {
    const int rows = static_cast<int>(data_.rows());
    const int rhs = static_cast<int>(data_.cols()) - 1;
    int pivot_row = -1;
    for (int r = 0; r < rows; ++r) {
      if (data_(r, entering) <= kPivotEps) continue;
      if (pivot_row < 0 || LexLess(r, pivot_row, entering)) pivot_row = r;
    }
    if (pivot_row < 0) return std::nullopt;

    data_.row(pivot_row) /= data_(pivot_row, entering);
    for (int r = 0; r < rows; ++r) {
      if (r == pivot_row) continue;
      const double factor = data_(r, entering);
      if (factor != 0.0) data_.row(r) -= factor * data_.row(pivot_row);
    }
    const int leaving = basis_[pivot_row];
    basis_[pivot_row] = entering;
    (void)rhs;
    return leaving;
  }

  // Basic-variable values keyed by label.
  std::vector<std::pair<int, double>> BasicSolution() const {
    std::vector<std::pair<int, double>> out;
    const int rhs = static_cast<int>(data_.cols()) - 1;
    for (int r = 0; r < static_cast<int>(data_.rows()); ++r) {
      out.emplace_back(basis_[r], data_(r, rhs));
    }
    return out;
  }

 private:
  // Lexicographic ratio comparison over (RHS, perturbation columns).
  bool LexLess(int r, int other, int col) const {
    const int rhs = static_cast<int>(data_.cols()) - 1;
    const double pr = data_(r, col);
    const double po = data_(other, col);
    double a = data_(r, rhs) / pr;
    double b = data_(other, rhs) / po;
    if (std::abs(a - b) > kPivotEps) return a < b;
    for (int c : perturbation_cols_) {
      a = data_(r, c) / pr;
      b = data_(other, c) / po;
      if (std::abs(a - b) > kPivotEps) return a < b;
    }
    return false;
  }

  Eigen::MatrixXd data_;
  std::vector<int> basis_;
  std::vector<int> perturbation_cols_;
};

}  // namespace internal

// Lemke-Howson complementary pivoting from the given initial label
// (an action id in [0, |A1|+|A2|)). Returns nullopt on ray termination or
// when the pivot cap 10*(|A1|+|A2|)^2 is exceeded; callers fall back to
// support enumeration.
inline std::optional<std::pair<SimplexVector, SimplexVector>> LemkeHowson(
    const BimatrixGame& game, int initial_label = 0) {
  const int m = game.rows();
  const int n = game.cols();
  if (initial_label < 0 || initial_label >= m + n) {
    throw std::invalid_argument("LemkeHowson: initial label out of range");
  }

  // Shift payoffs strictly positive; equilibria are shift-invariant.
  const double shift_a = game.payoff_1.minCoeff();
  const double shift_b = game.payoff_2.minCoeff();
  const Eigen::MatrixXd a =
      game.payoff_1.array() - shift_a + 1.0;
  const Eigen::MatrixXd b =
      game.payoff_2.array() - shift_b + 1.0;

  // Tableau over player 1's strategies x: B^T x + s = 1 (n rows).
  Eigen::MatrixXd p_data = Eigen::MatrixXd::Zero(n, m + n + 1);
  p_data.block(0, 0, n, m) = b.transpose();
  p_data.block(0, m, n, n) = Eigen::MatrixXd::Identity(n, n);
  p_data.col(m + n).setOnes();
  std::vector<int> p_basis(n), p_perturb(n);
  for (int r = 0; r < n; ++r) p_basis[r] = p_perturb[r] = m + r;
  internal::LhTableau tableau_p(std::move(p_data), std::move(p_basis),
                                std::move(p_perturb));

  // Tableau over player 2's strategies y: A y + w = 1 (m rows).
  Eigen::MatrixXd q_data = Eigen::MatrixXd::Zero(m, m + n + 1);
  q_data.block(0, 0, m, m) = Eigen::MatrixXd::Identity(m, m);
  q_data.block(0, m, m, n) = a;
  q_data.col(m + n).setOnes();
  std::vector<int> q_basis(m), q_perturb(m);
  for (int r = 0; r < m; ++r) q_basis[r] = q_perturb[r] = r;
  internal::LhTableau tableau_q(std::move(q_data), std::move(q_basis),
                                std::move(q_perturb));

  const long long max_pivots = 10LL * (m + n) * (m + n);
  int entering = initial_label;
  // x-variables (labels < m) live in tableau P, y-variables in tableau Q.
  bool into_p = initial_label < m;
  for (long long pivots = 0; pivots < max_pivots; ++pivots) {
    auto leaving = into_p ? tableau_p.Pivot(entering) : tableau_q.Pivot(entering);
    if (!leaving.has_value()) return std::nullopt;  // ray termination
    if (*leaving == initial_label) {
      // Complementary basis reached; read off both strategies.
      std::vector<double> x(m, 0.0), y(n, 0.0);
      double x_sum = 0.0, y_sum = 0.0;
      for (const auto& [label, value] : tableau_p.BasicSolution()) {
        if (label < m && value > 0.0) {
          x[label] = value;
          x_sum += value;
        }
      }
      for (const auto& [label, value] : tableau_q.BasicSolution()) {
        if (label >= m && value > 0.0) {
          y[label - m] = value;
          y_sum += value;
        }
      }
      if (x_sum <= 0.0 || y_sum <= 0.0) return std::nullopt;
      for (double& v : x) v /= x_sum;
      for (double& v : y) v /= y_sum;
      return std::make_pair(SimplexVector(std::move(x)),
                            SimplexVector(std::move(y)));
    }
    entering = *leaving;
    into_p = !into_p;
  }
  return std::nullopt;  // pivot cap exceeded
}

}  // namespace nashq

#endif  // NASHQ_LEMKE_HOWSON_HPP_
