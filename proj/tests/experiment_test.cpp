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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nashq/experiment.hpp"

namespace nashq {
namespace {

namespace fs = std::filesystem;

fs::path TestDir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "nashq_experiment_test" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

nlohmann::json BaseConfig() {
  return nlohmann::json{
      {"version", 1},
      {"name", "t"},
      {"environment", {{"type", "canonical"}, {"name", "matching_pennies"},
                       {"gamma_1", 0.5}, {"gamma_2", 0.5}}},
      {"learners", {{"player_1", "partial_info"}, {"player_2", "partial_info"}}},
      {"n_steps", 500},
      {"seed", 7}};
}

TEST_SUITE_BEGIN("experiment");

TEST_CASE("config validation") {
  SUBCASE("valid config parses and round-trips") {
    const auto cfg = ExperimentConfig::FromJson(BaseConfig());
    CHECK(cfg.name == "t");
    CHECK(cfg.n_steps == 500);
    CHECK(cfg.seed == 7);
    // the resolved snapshot parses back to the same resolved snapshot
    const auto again = ExperimentConfig::FromJson(cfg.ToJson());
    CHECK(again.ToJson() == cfg.ToJson());
  }
  SUBCASE("unknown keys are errors") {
    auto j = BaseConfig();
    j["n_stepz"] = 100;
    CHECK_THROWS_AS(ExperimentConfig::FromJson(j), ConfigError);
    j = BaseConfig();
    j["schedule"] = {{"kind", "global_stair"}, {"stairs", 3}};
    CHECK_THROWS_AS(ExperimentConfig::FromJson(j), ConfigError);
  }
  SUBCASE("field-level diagnostics for bad values") {
    auto j = BaseConfig();
    j["environment"] = {{"type", "random_game"}, {"gamma_1", 1.2}};
    try {
      ExperimentConfig::FromJson(j);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("gamma") != std::string::npos);
    }
  }
  SUBCASE("missing version or budget rejected") {
    auto j = BaseConfig();
    j.erase("version");
    CHECK_THROWS_AS(ExperimentConfig::FromJson(j), ConfigError);
    j = BaseConfig();
    j["n_steps"] = 0;
    CHECK_THROWS_AS(ExperimentConfig::FromJson(j), ConfigError);
  }
  SUBCASE("full_info must be paired with itself") {
    auto j = BaseConfig();
    j["learners"]["player_1"] = "full_info";
    CHECK_THROWS_AS(ExperimentConfig::FromJson(j), ConfigError);
    j["learners"]["player_2"] = "full_info";
    CHECK_NOTHROW(ExperimentConfig::FromJson(j));
  }
  SUBCASE("inference needs a partial_info opponent") {
    auto j = BaseConfig();
    j["learners"]["player_1"] = "inference";
    j["learners"]["player_2"] = "random";
    CHECK_THROWS_AS(ExperimentConfig::FromJson(j), ConfigError);
  }
  SUBCASE("unknown environment fixture rejected") {
    auto j = BaseConfig();
    j["environment"]["name"] = "rock_paper_scissors";
    CHECK_THROWS_AS(ExperimentConfig::FromJson(j), ConfigError);
  }
}

TEST_CASE("zero game experiment produces zero tables and gap") {
  auto j = BaseConfig();
  j["environment"]["name"] = "zero";
  const auto dir = TestDir("zero");
  const auto result =
      RunExperiment(ExperimentConfig::FromJson(j), dir.string());
  CHECK(result.certificate.gap_1 == 0.0);
  CHECK(result.certificate.gap_2 == 0.0);
  CHECK(result.certificate.passed);
  CHECK(result.max_abs_q_1 == 0.0);
  CHECK(result.mean_late_reward_1 == 0.0);

  for (const char* artifact : {"config.json", "trace.csv", "checkpoints.csv",
                               "certificate.json", "tables.json"}) {
    CHECK(fs::exists(dir / artifact));
  }
  const auto tables = nlohmann::json::parse(Slurp(dir / "tables.json"));
  for (double v : tables.at("q_1").get<std::vector<double>>()) CHECK(v == 0.0);
}

TEST_CASE("replaying a config is byte-identical") {
  auto j = BaseConfig();
  j["checkpoint_every"] = 100;
  const auto cfg = ExperimentConfig::FromJson(j);
  const auto dir_a = TestDir("replay_a");
  const auto dir_b = TestDir("replay_b");
  RunExperiment(cfg, dir_a.string());
  RunExperiment(cfg, dir_b.string());
  for (const char* artifact : {"config.json", "trace.csv", "checkpoints.csv",
                               "certificate.json", "tables.json"}) {
    CHECK(Slurp(dir_a / artifact) == Slurp(dir_b / artifact));
  }
  // and running from the resolved snapshot alone reproduces the run
  const auto snapshot =
      ExperimentConfig::FromJson(nlohmann::json::parse(Slurp(dir_a / "config.json")));
  const auto dir_c = TestDir("replay_c");
  RunExperiment(snapshot, dir_c.string());
  CHECK(Slurp(dir_a / "trace.csv") == Slurp(dir_c / "trace.csv"));
  CHECK(Slurp(dir_a / "tables.json") == Slurp(dir_c / "tables.json"));
}

TEST_CASE("trace and checkpoint formats") {
  auto j = BaseConfig();
  j["n_steps"] = 120;
  j["checkpoint_every"] = 40;
  const auto dir = TestDir("format");
  RunExperiment(ExperimentConfig::FromJson(j), dir.string());

  std::istringstream trace(Slurp(dir / "trace.csv"));
  std::string line;
  REQUIRE(std::getline(trace, line));
  CHECK(line == "t,s,a1,a2,r1,r2,alpha,epsilon,delta_1,delta_2");
  int rows = 0;
  while (std::getline(trace, line)) ++rows;
  CHECK(rows == 120);

  std::istringstream ckpt(Slurp(dir / "checkpoints.csv"));
  REQUIRE(std::getline(ckpt, line));
  CHECK(line == "t,metric_1,metric_2");
  rows = 0;
  while (std::getline(ckpt, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("all learner pairings execute") {
  // own-action rewards so the inference learner's precondition holds
  const auto game_dir = TestDir("pair_game");
  {
    std::vector<double> r1 = {0.2, 0.2, 0.7, 0.7};
    std::vector<double> r2 = {0.1, 0.6, 0.1, 0.6};
    std::vector<SparseDist> trans = {
        SparseDist::FromDense({0.5, 0.5}), SparseDist::PointMass(1),
        SparseDist::PointMass(0), SparseDist::FromDense({0.3, 0.7})};
    std::vector<SparseDist> all;
    for (int s = 0; s < 2; ++s) all.insert(all.end(), trans.begin(), trans.end());
    const StochasticGame game(2, 2, 2, {r1[0], r1[1], r1[2], r1[3],
                                        r1[0], r1[1], r1[2], r1[3]},
                              {r2[0], r2[1], r2[2], r2[3],
                               r2[0], r2[1], r2[2], r2[3]},
                              all, 0.6, 0.6);
    SaveGame(game, (game_dir / "game.json").string());
  }
  for (const char* pairing : {"full_info", "inference", "fictitious", "random"}) {
    auto j = BaseConfig();
    j["environment"] = {{"type", "json"},
                        {"path", (game_dir / "game.json").string()}};
    j["n_steps"] = 200;
    if (std::string(pairing) == "full_info") {
      j["learners"]["player_1"] = "full_info";
      j["learners"]["player_2"] = "full_info";
    } else {
      j["learners"]["player_1"] = pairing;
      j["learners"]["player_2"] = std::string(pairing) == "random"
                                      ? "random"
                                      : "partial_info";
    }
    const auto dir = TestDir(std::string("pair_") + pairing);
    CHECK_NOTHROW(RunExperiment(ExperimentConfig::FromJson(j), dir.string()));
    CHECK(fs::exists(dir / "certificate.json"));
  }
}

TEST_CASE("compare learners") {
  SUBCASE("random vs random on the zero game scores zero reward") {
    auto j = BaseConfig();
    j["environment"]["name"] = "zero";
    j["learners"]["player_1"] = "random";
    j["learners"]["player_2"] = "random";
    j["name"] = "zero_random";
    const auto dir = TestDir("compare_zero");
    const auto csv_path = CompareLearners(
        {ExperimentConfig::FromJson(j)}, 3, dir.string());
    const std::string csv = Slurp(csv_path);
    std::istringstream lines(csv);
    std::string header, row;
    REQUIRE(std::getline(lines, header));
    CHECK(header.rfind("config,learner_1,learner_2", 0) == 0);
    int rows = 0;
    while (std::getline(lines, row)) {
      ++rows;
      if (row.find("summary") == std::string::npos) {
        CHECK(row.find(",0,0,") != std::string::npos);  // zero gaps
      }
    }
    CHECK(rows == 4);  // 3 seeds + summary
  }
  SUBCASE("a learner beats the random baseline on a dominant-action game") {
    // player 1's action 1 pays 1 regardless; action 0 pays 0
    std::vector<double> r1 = {0, 0, 1, 1};
    std::vector<double> r2 = {0.5, 0.5, 0.5, 0.5};
    std::vector<SparseDist> trans(4, SparseDist::PointMass(0));
    const StochasticGame game(1, 2, 2, r1, r2, trans, 0.5, 0.5);
    const auto dir = TestDir("compare_dominant");
    const auto game_path = dir / "game.json";
    SaveGame(game, game_path.string());

    auto j = BaseConfig();
    j["environment"] = {{"type", "json"}, {"path", game_path.string()}};
    j["n_steps"] = 2000;
    j["learners"]["player_2"] = "random";
    const auto learner = RunExperiment(ExperimentConfig::FromJson(j),
                                       (dir / "learner").string());
    j["learners"]["player_1"] = "random";
    const auto baseline = RunExperiment(ExperimentConfig::FromJson(j),
                                        (dir / "baseline").string());
    CHECK(learner.mean_late_reward_1 > baseline.mean_late_reward_1);
    CHECK(learner.mean_late_reward_1 > 0.9);  // dominant action found
    CHECK(baseline.mean_late_reward_1 == doctest::Approx(0.5).epsilon(0.15));
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace nashq
