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

#ifndef NASHQ_TABLES_HPP_
#define NASHQ_TABLES_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace nashq {

// Per-player marginal action values, S x A^i. Zero-initialized so the
// M/(1-gamma) boundedness invariant is sharp.
class MarginalQTable {
 public:
  MarginalQTable() = default;
  MarginalQTable(int n_states, int n_actions)
      : n_states_(n_states),
        n_actions_(n_actions),
        q_(static_cast<std::size_t>(n_states) * n_actions, 0.0) {}

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }

  double& at(int s, int a) { return q_[static_cast<std::size_t>(s) * n_actions_ + a]; }
  double at(int s, int a) const {
    return q_[static_cast<std::size_t>(s) * n_actions_ + a];
  }

  std::vector<double> Row(int s) const {
    const auto* base = q_.data() + static_cast<std::size_t>(s) * n_actions_;
    return std::vector<double>(base, base + n_actions_);
  }

  double RowMax(int s) const {
    const auto* base = q_.data() + static_cast<std::size_t>(s) * n_actions_;
    return *std::max_element(base, base + n_actions_);
  }

  double MaxAbs() const {
    double best = 0.0;
    for (double v : q_) best = std::max(best, std::abs(v));
    return best;
  }

  const std::vector<double>& data() const { return q_; }

 private:
  int n_states_ = 0;
  int n_actions_ = 0;
  std::vector<double> q_;
};

// Per-player joint action values, S x A1 x A2.
class JointQTable {
 public:
  JointQTable() = default;
  JointQTable(int n_states, int n_actions_1, int n_actions_2)
      : n_states_(n_states),
        n_actions_1_(n_actions_1),
        n_actions_2_(n_actions_2),
        q_(static_cast<std::size_t>(n_states) * n_actions_1 * n_actions_2, 0.0) {}

  int n_states() const { return n_states_; }
  int n_actions_1() const { return n_actions_1_; }
  int n_actions_2() const { return n_actions_2_; }

  std::size_t Index(int s, int a1, int a2) const {
    return (static_cast<std::size_t>(s) * n_actions_1_ + a1) * n_actions_2_ + a2;
  }
  double& at(int s, int a1, int a2) { return q_[Index(s, a1, a2)]; }
  double at(int s, int a1, int a2) const { return q_[Index(s, a1, a2)]; }

  Eigen::MatrixXd Matrix(int s) const {
    Eigen::MatrixXd out(n_actions_1_, n_actions_2_);
    for (int a1 = 0; a1 < n_actions_1_; ++a1) {
      for (int a2 = 0; a2 < n_actions_2_; ++a2) out(a1, a2) = at(s, a1, a2);
    }
    return out;
  }

  double MaxAbs() const {
    double best = 0.0;
    for (double v : q_) best = std::max(best, std::abs(v));
    return best;
  }

  const std::vector<double>& data() const { return q_; }

 private:
  int n_states_ = 0;
  int n_actions_1_ = 0;
  int n_actions_2_ = 0;
  std::vector<double> q_;
};

// Update counts per cell; backs the per-visit learning-rate schedule and
// coverage diagnostics.
class VisitCounter {
 public:
  VisitCounter() = default;
  explicit VisitCounter(std::size_t cells) : counts_(cells, 0) {}

  long long Increment(std::size_t cell) { return ++counts_[cell]; }
  long long count(std::size_t cell) const { return counts_[cell]; }

 private:
  std::vector<long long> counts_;
};

}  // namespace nashq

#endif  // NASHQ_TABLES_HPP_
