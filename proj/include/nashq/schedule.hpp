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

#ifndef NASHQ_SCHEDULE_HPP_
#define NASHQ_SCHEDULE_HPP_

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nashq {

// Learning-rate schedules. Both emit c_t in (0, 1].
//  - global_stair: c_t = 1/(1 + floor(t / stair_width)), the documented
//    default with stair_width = 250.
//  - per_visit_count: c = 1/(n + offset) where n is the cell's visit count
//    after the current increment; the per-cell sums satisfy the
//    Robbins-Monro conditions (sum alpha = inf, sum alpha^2 < inf) by
//    construction.
struct LearningRateSchedule {
  enum class Kind { kGlobalStair, kPerVisitCount };

  Kind kind = Kind::kGlobalStair;
  long long stair_width = 250;
  double offset = 0.0;

  double Rate(long long t, long long visit_count) const {
    if (kind == Kind::kGlobalStair) {
      if (stair_width <= 0) throw std::invalid_argument("stair_width must be positive");
      return 1.0 / (1.0 + static_cast<double>(t / stair_width));
    }
    if (offset < 0.0) throw std::invalid_argument("offset must be nonnegative");
    return 1.0 / (static_cast<double>(visit_count) + offset);
  }

  std::string name() const {
    return kind == Kind::kGlobalStair
               ? "global_stair(" + std::to_string(stair_width) + ")"
               : "per_visit_count(offset=" + std::to_string(offset) + ")";
  }
};

// Behavior-policy exploration: eps_t = max(eps_min, 1/(1 + t/t_scale)).
// The behavior strategy is (1-eps) * best-response mix + eps * uniform;
// update targets stay on the unmixed best response.
struct EpsilonSchedule {
  double eps_min = 0.01;
  double t_scale = 0.0;  // resolved to n_steps/10 by the runners when 0

  double At(long long t) const {
    if (t_scale <= 0.0) return eps_min;
    return std::max(eps_min, 1.0 / (1.0 + static_cast<double>(t) / t_scale));
  }
};

}  // namespace nashq

#endif  // NASHQ_SCHEDULE_HPP_
