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

#ifndef NASHQ_SELECTOR_HPP_
#define NASHQ_SELECTOR_HPP_

#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "nashq/bimatrix.hpp"
#include "nashq/lemke_howson.hpp"
#include "nashq/support_enumeration.hpp"

namespace nashq {

struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bi-matrix games commonly have several equilibria and there is no canonical
// pick; the selection rule is an explicit, named policy so experiments can
// vary it while staying deterministic.
class EquilibriumSelector {
 public:
  enum class Kind {
    kLemkeHowsonThenEnumeration,  // default: LH from initial_label, SE fallback
    kEnumerationFirst,            // first result in lexicographic support order
  };

  explicit EquilibriumSelector(Kind kind = Kind::kLemkeHowsonThenEnumeration,
                               int initial_label = 0)
      : kind_(kind), initial_label_(initial_label) {}

  std::pair<SimplexVector, SimplexVector> Select(const BimatrixGame& game) const {
    if (kind_ == Kind::kLemkeHowsonThenEnumeration) {
      auto pair = LemkeHowson(game, initial_label_);
      if (pair.has_value() &&
          VerifyBimatrixNash(game, pair->first, pair->second) <= kEquilibriumGap) {
        return *pair;
      }
    }
    auto all = SupportEnumeration(game);
    if (all.empty()) {
      throw SolverFailure("equilibrium selection: no certified equilibrium found");
    }
    return all.front();
  }

  std::string name() const {
    return kind_ == Kind::kLemkeHowsonThenEnumeration
               ? "lemke_howson_label_" + std::to_string(initial_label_)
               : "support_enumeration_first";
  }

 private:
  Kind kind_;
  int initial_label_;
};

struct NashQResult {
  double value_1 = 0.0;
  double value_2 = 0.0;
  SimplexVector pi_1;
  SimplexVector pi_2;
};

// Selects one equilibrium of the bi-matrix game (q1, q2) and returns both
// players' expected values under it.
inline NashQResult NashQValue(const Eigen::MatrixXd& q1,
                              const Eigen::MatrixXd& q2,
                              const EquilibriumSelector& selector) {
  BimatrixGame game(q1, q2);
  auto [x, y] = selector.Select(game);
  Eigen::VectorXd xv(game.rows()), yv(game.cols());
  for (int i = 0; i < game.rows(); ++i) xv(i) = x[i];
  for (int j = 0; j < game.cols(); ++j) yv(j) = y[j];
  NashQResult result;
  result.value_1 = xv.dot(q1 * yv);
  result.value_2 = xv.dot(q2 * yv);
  result.pi_1 = std::move(x);
  result.pi_2 = std::move(y);
  return result;
}

}  // namespace nashq

#endif  // NASHQ_SELECTOR_HPP_
