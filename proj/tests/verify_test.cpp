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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "nashq/partial_info.hpp"
#include "nashq/verify.hpp"

namespace nashq {
namespace {

StochasticGame RepeatedBimatrix(const std::vector<double>& r1,
                                const std::vector<double>& r2, int na1, int na2,
                                double gamma) {
  std::vector<SparseDist> trans(static_cast<std::size_t>(na1) * na2,
                                SparseDist::PointMass(0));
  return StochasticGame(1, na1, na2, r1, r2, trans, gamma, gamma);
}

StochasticGame MatchingPennies(double gamma = 0.5) {
  return RepeatedBimatrix({1, -1, -1, 1}, {-1, 1, 1, -1}, 2, 2, gamma);
}

StochasticGame PrisonersDilemma(double gamma = 0.5) {
  // row player payoffs [[-1,-3],[0,-2]]; column player is the transpose
  return RepeatedBimatrix({-1, -3, 0, -2}, {-1, 0, -3, -2}, 2, 2, gamma);
}

StochasticGame SeededGame(std::uint64_t seed, int n_states, int na1, int na2,
                          double gamma_1, double gamma_2) {
  Rng rng(seed);
  std::vector<double> r1, r2;
  std::vector<SparseDist> trans;
  for (int s = 0; s < n_states; ++s) {
    for (int a1 = 0; a1 < na1; ++a1) {
      for (int a2 = 0; a2 < na2; ++a2) {
        r1.push_back(2.0 * rng.Uniform() - 1.0);
        r2.push_back(2.0 * rng.Uniform() - 1.0);
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

TEST_SUITE_BEGIN("verify");

TEST_CASE("reconstruction basics") {
  SUBCASE("zero game is the fixed point immediately") {
    StochasticGame game = RepeatedBimatrix({0, 0, 0, 0}, {0, 0, 0, 0}, 2, 2, 0.9);
    auto recon = ReconstructFullQ(game, StrategyProfile::Uniform(game), 1e-10);
    CHECK(recon.converged);
    CHECK(recon.iterations == 1);
    CHECK(recon.residual_1 == 0.0);
    CHECK(recon.residual_2 == 0.0);
    CHECK(recon.q_tilde_1.MaxAbs() == 0.0);
  }
  SUBCASE("one-state self-loop recovers the geometric series") {
    StochasticGame game(1, 1, 1, {1.0}, {1.0}, {SparseDist::PointMass(0)}, 0.9,
                        0.9);
    auto recon = ReconstructFullQ(game, StrategyProfile::Uniform(game), 1e-8);
    CHECK(recon.converged);
    CHECK(recon.q_tilde_1.at(0, 0, 0) == doctest::Approx(10.0).epsilon(1e-7));
  }
}

TEST_CASE("reconstruction matches the linear-algebra oracle") {
  const StochasticGame game = SeededGame(101, 3, 2, 3, 0.9, 0.8);
  const StrategyProfile profile = StrategyProfile::Uniform(game);
  auto recon = ReconstructFullQ(game, profile, 1e-11);
  REQUIRE(recon.converged);
  CHECK(recon.contraction_ratio <= 0.9 + 1e-9);

  for (int i = 0; i < 2; ++i) {
    // oracle: exact profile value v, then one composition step
    const auto v = ValueOfProfile(game, profile, i);
    const JointQTable& q = i == 0 ? recon.q_tilde_1 : recon.q_tilde_2;
    for (int s = 0; s < 3; ++s) {
      for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 3; ++a2) {
          double ev = 0.0;
          for (const auto& [sn, p] : game.transition(s, a1, a2).entries()) {
            ev += p * v[sn];
          }
          const double oracle = game.reward(i, s, a1, a2) + game.gamma(i) * ev;
          CHECK(q.at(s, a1, a2) == doctest::Approx(oracle).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("marginal consistency defect") {
  SUBCASE("marginalized reconstruction has zero defect by construction") {
    const StochasticGame game = SeededGame(103, 4, 2, 2, 0.85, 0.85);
    const StrategyProfile profile = StrategyProfile::Uniform(game);
    auto recon = ReconstructFullQ(game, profile, 1e-11);
    MarginalQTable qbar(4, 2);
    for (int s = 0; s < 4; ++s) {
      for (int a = 0; a < 2; ++a) {
        double avg = 0.0;
        for (int b = 0; b < 2; ++b) {
          avg += profile.pi_2[s][b] * recon.q_tilde_1.at(s, a, b);
        }
        qbar.at(s, a) = avg;
      }
    }
    CHECK(MarginalConsistency(qbar, recon, profile, 0) < 1e-9);
    CHECK(ConvergenceMetric(qbar, recon, profile, 0) < 1e-9);
  }
  SUBCASE("zero game has zero defect and zero metric") {
    StochasticGame game = RepeatedBimatrix({0, 0, 0, 0}, {0, 0, 0, 0}, 2, 2, 0.9);
    auto recon = ReconstructFullQ(game, StrategyProfile::Uniform(game), 1e-10);
    MarginalQTable qbar(1, 2);
    CHECK(MarginalConsistency(qbar, recon, StrategyProfile::Uniform(game), 1) ==
          0.0);
  }
  SUBCASE("hand-solved matching pennies satisfies the identity") {
    // Mixed play makes the continuation value 0, so Q~ equals the stage
    // payoffs and the marginal table is identically 0.
    const StochasticGame game = MatchingPennies(0.7);
    const StrategyProfile profile = StrategyProfile::Uniform(game);
    auto recon = ReconstructFullQ(game, profile, 1e-11);
    CHECK(recon.q_tilde_1.at(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    MarginalQTable qbar(1, 2);  // zeros: the hand-computed solution of Eq. 7
    CHECK(MarginalConsistency(qbar, recon, profile, 0) < 1e-9);
    CHECK(MarginalConsistency(qbar, recon, profile, 1) < 1e-9);
  }
}

TEST_CASE("nash certification") {
  SUBCASE("matching pennies mixed profile has zero gaps") {
    const StochasticGame game = MatchingPennies(0.5);
    auto cert = CertifyNash(game, StrategyProfile::Uniform(game), 1e-8);
    CHECK(cert.gap_1 <= 1e-10);
    CHECK(cert.gap_2 <= 1e-10);
    CHECK(cert.passed);
  }
  SUBCASE("prisoners dilemma at both-cooperate fails with gap 1/(1-gamma)") {
    const StochasticGame game = PrisonersDilemma(0.5);
    StrategyProfile coop;
    coop.pi_1.push_back(SimplexVector::PointMass(0, 2));
    coop.pi_2.push_back(SimplexVector::PointMass(0, 2));
    auto cert = CertifyNash(game, coop);
    CHECK(cert.gap_1 == doctest::Approx(2.0).epsilon(1e-9));  // 1/(1-0.5)
    CHECK(cert.gap_2 == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_FALSE(cert.passed);
  }
  SUBCASE("prisoners dilemma at both-defect certifies exactly") {
    const StochasticGame game = PrisonersDilemma(0.5);
    StrategyProfile defect;
    defect.pi_1.push_back(SimplexVector::PointMass(1, 2));
    defect.pi_2.push_back(SimplexVector::PointMass(1, 2));
    auto cert = CertifyNash(game, defect, 1e-8);
    CHECK(cert.passed);
    // and the Eq.-7 solution at this profile marginalizes consistently
    auto recon = ReconstructFullQ(game, defect, 1e-11);
    MarginalQTable qbar(1, 2);
    // v = -2/(1-0.5) = -4; qbar(a) = r(a, defect) + 0.5 * (-4)
    qbar.at(0, 0) = -3.0 + 0.5 * -4.0;
    qbar.at(0, 1) = -2.0 + 0.5 * -4.0;
    CHECK(MarginalConsistency(qbar, recon, defect, 0) < 1e-9);
  }
  SUBCASE("large-state sparse path agrees with the trivial optimum") {
    // 2100-state deterministic cycle with one action per player: any profile
    // is optimal, so the gap must be zero through the sparse solver.
    const int n = 2100;
    std::vector<double> r1(n), r2(n);
    std::vector<SparseDist> trans;
    Rng rng(5);
    for (int s = 0; s < n; ++s) {
      r1[s] = rng.Uniform();
      r2[s] = rng.Uniform();
      trans.push_back(SparseDist::PointMass((s + 1) % n));
    }
    StochasticGame game(n, 1, 1, r1, r2, trans, 0.9, 0.9);
    auto cert = CertifyNash(game, StrategyProfile::Uniform(game), 1e-6);
    CHECK(cert.gap_1 <= 1e-7);
    CHECK(cert.gap_2 <= 1e-7);
    CHECK(cert.passed);
  }
}

TEST_CASE("certificate serialization and fingerprint") {
  const StochasticGame game = MatchingPennies(0.5);
  auto recon = ReconstructFullQ(game, StrategyProfile::Uniform(game), 1e-10);
  auto cert = CertifyNash(game, StrategyProfile::Uniform(game), 0.05);
  const std::string fp = GameFingerprint(game);
  CHECK(fp.size() == 16);
  CHECK(fp == GameFingerprint(game));  // deterministic
  CHECK(fp != GameFingerprint(PrisonersDilemma(0.5)));

  auto j = CertificateToJson(cert, recon, fp, 42, "global_stair(250)");
  CHECK(j["passed"] == true);
  CHECK(j["gap_1"].get<double>() <= 1e-10);
  CHECK(j["tolerance"].get<double>() == 0.05);
  CHECK(j["config"]["seed"] == 42);
  CHECK(j["config"]["game_fingerprint"] == fp);
  CHECK(j["reconstruction"]["converged"] == true);
}

TEST_CASE("learned profile on an easy game certifies end to end") {
  // Dominant-strategy game: r1 favors action 1 regardless, r2 favors action
  // 0 regardless; learning must find the unique equilibrium.
  std::vector<double> r1 = {0.0, 0.0, 1.0, 1.0};
  std::vector<double> r2 = {1.0, 0.0, 1.0, 0.0};
  StochasticGame game = RepeatedBimatrix(r1, r2, 2, 2, 0.6);
  LearnOptions options;
  options.n_steps = 4000;
  auto result = RunPartialInfo(game, options, 12);
  auto cert = CertifyNash(game, result.profile, 0.05);
  CHECK(cert.passed);
  auto recon = ReconstructFullQ(game, result.profile, 1e-10);
  CHECK(MarginalConsistency(result.q_1, recon, result.profile, 0) < 0.05);
}

TEST_SUITE_END();

}  // namespace
}  // namespace nashq
