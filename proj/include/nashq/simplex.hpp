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

#ifndef NASHQ_SIMPLEX_HPP_
#define NASHQ_SIMPLEX_HPP_

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nashq/rng.hpp"

namespace nashq {

inline constexpr double kSimplexTolerance = 1e-12;
// Inputs whose mass is within this of 1 are renormalized; anything further
// off is a modeling bug and is rejected.
inline constexpr double kSimplexRenormTolerance = 1e-9;

// A probability distribution over a finite index set.
class SimplexVector {
 public:
  SimplexVector() = default;

  explicit SimplexVector(std::vector<double> weights) {
    Assign(std::move(weights));
  }
  SimplexVector(std::initializer_list<double> weights)
      : SimplexVector(std::vector<double>(weights)) {}

  static SimplexVector Uniform(int n) {
    if (n <= 0) throw std::invalid_argument("SimplexVector: empty support");
    return SimplexVector(std::vector<double>(n, 1.0 / n));
  }

  static SimplexVector PointMass(int index, int n) {
    std::vector<double> w(n, 0.0);
    w.at(index) = 1.0;
    return SimplexVector(std::move(w));
  }

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  // Index drawn with probability weights_[i], by CDF inversion on a single
  // uniform draw.
  int Sample(Rng& rng) const {
    const double u = rng.Uniform();
    double cumulative = 0.0;
    for (int i = 0; i < size(); ++i) {
      cumulative += weights_[i];
      if (u < cumulative) return i;
    }
    return size() - 1;  // guards against accumulated rounding at u ~ 1
  }

  double TotalVariation(const SimplexVector& other) const {
    if (other.size() != size()) {
      throw std::invalid_argument("TotalVariation: size mismatch");
    }
    double sum = 0.0;
    for (int i = 0; i < size(); ++i) sum += std::abs(weights_[i] - other[i]);
    return 0.5 * sum;
  }

  double Dot(const std::vector<double>& values) const {
    if (values.size() != weights_.size()) {
      throw std::invalid_argument("SimplexVector::Dot: size mismatch");
    }
    return std::inner_product(weights_.begin(), weights_.end(),
                              values.begin(), 0.0);
  }

 private:
  void Assign(std::vector<double> weights) {
    if (weights.empty()) {
      throw std::invalid_argument("SimplexVector: empty support");
    }
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= -kSimplexRenormTolerance) || !(w <= 1.0 + kSimplexRenormTolerance)) {
        throw std::invalid_argument("SimplexVector: weight outside [0,1]");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kSimplexRenormTolerance) {
      throw std::invalid_argument("SimplexVector: weights do not sum to 1");
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      for (double& w : weights) w /= sum;
    }
    for (double& w : weights) {
      if (w < 0.0) w = 0.0;
      if (w > 1.0) w = 1.0;
    }
    weights_ = std::move(weights);
  }

  std::vector<double> weights_;
};

}  // namespace nashq

#endif  // NASHQ_SIMPLEX_HPP_
