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

#ifndef NASHQ_VERIFY_HPP_
#define NASHQ_VERIFY_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashq/game.hpp"
#include "nashq/mdp.hpp"
#include "nashq/serialization.hpp"
#include "nashq/tables.hpp"
#include "nashq/value.hpp"

namespace nashq {

// Joint Q-functions rebuilt from a fixed strategy profile by contraction.
struct ReconstructedQ {
  JointQTable q_tilde_1;
  JointQTable q_tilde_2;
  double residual_1 = 0.0;  // sup-norm change of the last sweep per player
  double residual_2 = 0.0;
  int iterations = 0;
  bool converged = false;
  // worst observed ratio of successive sup-norm changes; the iteration is a
  // gamma-contraction, so this stays <= max(gamma) + rounding
  double contraction_ratio = 0.0;
};

// Rebuilds both players' joint Q-functions for a fixed profile:
//   Q~(s,a1,a2) <- r(s,a1,a2) + gamma * sum_s' p(s'|s,a1,a2) pi1(s')Q~(s')pi2(s')
// from zero, stopping when the sup-norm change drops below tol*(1-gamma) for
// both players (which bounds the distance to the fixed point by tol).
inline ReconstructedQ ReconstructFullQ(const StochasticGame& game,
                                       const StrategyProfile& profile,
                                       double tol = 1e-10,
                                       int max_iter = 1000000) {
  if (tol <= 0.0) throw std::invalid_argument("ReconstructFullQ: tol must be positive");
  profile.Validate(game);
  const int n = game.n_states();
  const int na1 = game.n_actions(0);
  const int na2 = game.n_actions(1);

  ReconstructedQ out;
  out.q_tilde_1 = JointQTable(n, na1, na2);
  out.q_tilde_2 = JointQTable(n, na1, na2);
  JointQTable* q[2] = {&out.q_tilde_1, &out.q_tilde_2};
  const double stop_1 = tol * (1.0 - game.gamma(0));
  const double stop_2 = tol * (1.0 - game.gamma(1));

  std::vector<double> w(n);  // pi1(s) . Q~(s) . pi2(s), per player
  double prev_change[2] = {-1.0, -1.0};
  double change[2] = {0.0, 0.0};
  for (int iter = 0; iter < max_iter; ++iter) {
    for (int i = 0; i < 2; ++i) {
      for (int s = 0; s < n; ++s) {
        double acc = 0.0;
        for (int a1 = 0; a1 < na1; ++a1) {
          const double p1 = profile.pi_1[s][a1];
          if (p1 == 0.0) continue;
          for (int a2 = 0; a2 < na2; ++a2) {
            const double p2 = profile.pi_2[s][a2];
            if (p2 == 0.0) continue;
            acc += p1 * p2 * q[i]->at(s, a1, a2);
          }
        }
        w[s] = acc;
      }
      change[i] = 0.0;
      const double gamma = game.gamma(i);
      for (int s = 0; s < n; ++s) {
        for (int a1 = 0; a1 < na1; ++a1) {
          for (int a2 = 0; a2 < na2; ++a2) {
            double ev = 0.0;
            for (const auto& [sn, p] : game.transition(s, a1, a2).entries()) {
              ev += p * w[sn];
            }
            const double fresh = game.reward(i, s, a1, a2) + gamma * ev;
            double& cell = q[i]->at(s, a1, a2);
            change[i] = std::max(change[i], std::abs(fresh - cell));
            cell = fresh;
          }
        }
      }
      // Ratios are meaningful only while the change dominates rounding noise
      // (~eps * ||Q||); below that floor the quotient is pure noise.
      const double ratio_floor =
          1e-5 * (1.0 + game.max_abs_reward() / (1.0 - gamma));
      if (prev_change[i] > ratio_floor) {
        out.contraction_ratio =
            std::max(out.contraction_ratio, change[i] / prev_change[i]);
      }
      prev_change[i] = change[i];
    }
    out.iterations = iter + 1;
    if (change[0] < stop_1 && change[1] < stop_2) {
      out.converged = true;
      break;
    }
  }
  out.residual_1 = change[0];
  out.residual_2 = change[1];
  return out;
}

// Defect of the marginalization identity: the learned marginal table against
// the opponent-averaged reconstructed joint table, in sup-norm.
inline double MarginalConsistency(const MarginalQTable& qbar,
                                  const ReconstructedQ& recon,
                                  const StrategyProfile& profile, int player) {
  const JointQTable& q = player == 0 ? recon.q_tilde_1 : recon.q_tilde_2;
  const auto& opp_rows = profile.pi(1 - player);
  double defect = 0.0;
  for (int s = 0; s < q.n_states(); ++s) {
    const int n_own = player == 0 ? q.n_actions_1() : q.n_actions_2();
    const int n_opp = player == 0 ? q.n_actions_2() : q.n_actions_1();
    for (int a = 0; a < n_own; ++a) {
      double avg = 0.0;
      for (int b = 0; b < n_opp; ++b) {
        avg += opp_rows[s][b] * (player == 0 ? q.at(s, a, b) : q.at(s, b, a));
      }
      defect = std::max(defect, std::abs(qbar.at(s, a) - avg));
    }
  }
  return defect;
}

// The per-checkpoint convergence scalar: same marginalization defect, read
// against a table snapshot from mid-run.
inline double ConvergenceMetric(const MarginalQTable& qbar_t,
                                const ReconstructedQ& recon,
                                const StrategyProfile& profile, int player) {
  return MarginalConsistency(qbar_t, recon, profile, player);
}

struct NashCertificate {
  double gap_1 = 0.0;  // best unilateral improvement, value units
  double gap_2 = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

inline constexpr double kDefaultNashTolerance = 0.05;

namespace internal {

// Best-response value against the fixed opponent for games too large for the
// dense policy-iteration path: sparse value iteration straight off the game.
inline std::vector<double> SparseBestResponseValue(const StochasticGame& game,
                                                   const StrategyProfile& profile,
                                                   int player, double tol) {
  const int opponent = 1 - player;
  const auto& opp_rows = profile.pi(opponent);
  const double gamma = game.gamma(player);
  std::vector<double> v(game.n_states(), 0.0);
  const double stop = tol * (1.0 - gamma);
  for (int iter = 0; iter < 10000000; ++iter) {
    double change = 0.0;
    for (int s = 0; s < game.n_states(); ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < game.n_actions(player); ++a) {
        double q = 0.0;
        for (int b = 0; b < game.n_actions(opponent); ++b) {
          const double wgt = opp_rows[s][b];
          if (wgt == 0.0) continue;
          const int a1 = player == 0 ? a : b;
          const int a2 = player == 0 ? b : a;
          double ev = 0.0;
          for (const auto& [sn, p] : game.transition(s, a1, a2).entries()) {
            ev += p * v[sn];
          }
          q += wgt * (game.reward(player, s, a1, a2) + gamma * ev);
        }
        best = std::max(best, q);
      }
      change = std::max(change, std::abs(best - v[s]));
      v[s] = best;
    }
    if (change < stop) return v;
  }
  throw std::runtime_error("SparseBestResponseValue: did not converge");
}

}  // namespace internal

// Exact epsilon-Nash certification: gap_i is the largest per-state value
// improvement player i can reach by deviating to a best response against the
// fixed opponent (an MDP optimum, so deterministic deviations suffice).
inline NashCertificate CertifyNash(const StochasticGame& game,
                                   const StrategyProfile& profile,
                                   double tol = kDefaultNashTolerance) {
  profile.Validate(game);
  NashCertificate cert;
  cert.tolerance = tol;
  double gaps[2] = {0.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    std::vector<double> v_star;
    if (game.n_states() <= kDirectSolveMaxStates) {
      const Mdp mdp = InducedMdp(game, profile, i);
      v_star = SolveOptimalValue(mdp);
    } else {
      v_star = internal::SparseBestResponseValue(game, profile, i, 1e-9);
    }
    const std::vector<double> v_prof = ValueOfProfile(game, profile, i);
    double gap = 0.0;
    for (int s = 0; s < game.n_states(); ++s) {
      gap = std::max(gap, v_star[s] - v_prof[s]);
    }
    gaps[i] = std::max(gap, 0.0);
  }
  cert.gap_1 = gaps[0];
  cert.gap_2 = gaps[1];
  cert.passed = std::max(cert.gap_1, cert.gap_2) <= tol;
  return cert;
}

// FNV-1a over the canonical JSON dump; ties certificates to the exact game.
inline std::string GameFingerprint(const StochasticGame& game) {
  const std::string dump = GameToJson(game).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline nlohmann::json CertificateToJson(const NashCertificate& cert,
                                        const ReconstructedQ& recon,
                                        const std::string& game_fingerprint,
                                        std::uint64_t seed,
                                        const std::string& schedule_name) {
  nlohmann::json j;
  j["gap_1"] = cert.gap_1;
  j["gap_2"] = cert.gap_2;
  j["tolerance"] = cert.tolerance;
  j["passed"] = cert.passed;
  j["reconstruction"] = {{"residual_1", recon.residual_1},
                         {"residual_2", recon.residual_2},
                         {"iterations", recon.iterations},
                         {"converged", recon.converged}};
  j["config"] = {{"game_fingerprint", game_fingerprint},
                 {"seed", seed},
                 {"schedule", schedule_name}};
  return j;
}

}  // namespace nashq

#endif  // NASHQ_VERIFY_HPP_
