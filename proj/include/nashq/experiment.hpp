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

#ifndef NASHQ_EXPERIMENT_HPP_
#define NASHQ_EXPERIMENT_HPP_

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashq/envs.hpp"
#include "nashq/full_info.hpp"
#include "nashq/inference.hpp"
#include "nashq/partial_info.hpp"
#include "nashq/serialization.hpp"
#include "nashq/verify.hpp"

namespace nashq {

// Configuration problems are reported with a JSON-pointer-style path so the
// offending field is identifiable; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class LearnerKind { kPartialInfo, kFullInfo, kFictitious, kInference, kRandom };

inline LearnerKind LearnerKindFromString(const std::string& s,
                                         const std::string& where) {
  if (s == "partial_info") return LearnerKind::kPartialInfo;
  if (s == "full_info") return LearnerKind::kFullInfo;
  if (s == "fictitious") return LearnerKind::kFictitious;
  if (s == "inference") return LearnerKind::kInference;
  if (s == "random") return LearnerKind::kRandom;
  throw ConfigError(where + ": unknown learner '" + s + "'");
}

inline std::string LearnerKindName(LearnerKind k) {
  switch (k) {
    case LearnerKind::kPartialInfo: return "partial_info";
    case LearnerKind::kFullInfo: return "full_info";
    case LearnerKind::kFictitious: return "fictitious";
    case LearnerKind::kInference: return "inference";
    case LearnerKind::kRandom: return "random";
  }
  return "?";
}

namespace internal {

// Unknown keys are configuration errors, not warnings: silent drift between
// a config and the code reading it would defeat reproducibility.
inline void RejectUnknownKeys(const nlohmann::json& obj,
                              const std::vector<std::string>& allowed,
                              const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const auto& key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
T GetOr(const nlohmann::json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("field '" + key + "' has the wrong type");
  }
}

template <typename T>
T GetRequired(const nlohmann::json& obj, const std::string& key,
              const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace internal

struct ExperimentConfig {
  std::string name = "experiment";
  nlohmann::json environment;  // resolved environment description
  std::array<LearnerKind, 2> learners = {LearnerKind::kPartialInfo,
                                         LearnerKind::kPartialInfo};
  LearningRateSchedule schedule;
  EpsilonSchedule exploration;
  long long n_steps = 0;
  long long n_episodes = 0;
  int max_episode_len = 200;
  long long checkpoint_every = -1;  // -1: resolved per environment type
  std::uint64_t seed = 0;
  double certify_tol = kDefaultNashTolerance;
  bool blind_observation = false;  // gridworld ablation: own location only

  static ExperimentConfig FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;

  StochasticGame BuildGame() const;
  void ValidatePairing() const {
    const bool has_full = learners[0] == LearnerKind::kFullInfo ||
                          learners[1] == LearnerKind::kFullInfo;
    if (has_full && learners[0] != learners[1]) {
      throw ConfigError("learners: full_info requires both players full_info");
    }
    for (int i = 0; i < 2; ++i) {
      const LearnerKind k = learners[i];
      if (k == LearnerKind::kInference || k == LearnerKind::kFictitious) {
        if (learners[1 - i] != LearnerKind::kPartialInfo) {
          throw ConfigError(
              "learners: inference/fictitious must face a partial_info player");
        }
      }
    }
  }
};

inline ExperimentConfig ExperimentConfig::FromJson(const nlohmann::json& j) {
  internal::RejectUnknownKeys(
      j,
      {"version", "name", "environment", "learners", "schedule", "exploration",
       "n_steps", "n_episodes", "max_episode_len", "checkpoint_every", "seed",
       "certify_tol", "blind_observation"},
      "config");
  const int version = internal::GetRequired<int>(j, "version", "config");
  if (version != 1) throw ConfigError("config: unsupported version");

  ExperimentConfig cfg;
  cfg.name = internal::GetOr<std::string>(j, "name", "experiment");
  cfg.environment = internal::GetRequired<nlohmann::json>(j, "environment", "config");

  const auto learners =
      internal::GetRequired<nlohmann::json>(j, "learners", "config");
  internal::RejectUnknownKeys(learners, {"player_1", "player_2"}, "learners");
  cfg.learners[0] = LearnerKindFromString(
      internal::GetRequired<std::string>(learners, "player_1", "learners"),
      "learners.player_1");
  cfg.learners[1] = LearnerKindFromString(
      internal::GetRequired<std::string>(learners, "player_2", "learners"),
      "learners.player_2");

  if (j.contains("schedule")) {
    const auto& sched = j.at("schedule");
    internal::RejectUnknownKeys(sched, {"kind", "stair_width", "offset"},
                                "schedule");
    const std::string kind =
        internal::GetOr<std::string>(sched, "kind", "global_stair");
    if (kind == "global_stair") {
      cfg.schedule.kind = LearningRateSchedule::Kind::kGlobalStair;
    } else if (kind == "per_visit_count") {
      cfg.schedule.kind = LearningRateSchedule::Kind::kPerVisitCount;
    } else {
      throw ConfigError("schedule.kind: unknown kind '" + kind + "'");
    }
    cfg.schedule.stair_width =
        internal::GetOr<long long>(sched, "stair_width", 250);
    cfg.schedule.offset = internal::GetOr<double>(sched, "offset", 0.0);
    if (cfg.schedule.stair_width <= 0) {
      throw ConfigError("schedule.stair_width: must be positive");
    }
    if (cfg.schedule.offset < 0.0) {
      throw ConfigError("schedule.offset: must be nonnegative");
    }
  }
  if (j.contains("exploration")) {
    const auto& exp = j.at("exploration");
    internal::RejectUnknownKeys(exp, {"eps_min", "t_scale"}, "exploration");
    cfg.exploration.eps_min = internal::GetOr<double>(exp, "eps_min", 0.01);
    cfg.exploration.t_scale = internal::GetOr<double>(exp, "t_scale", 0.0);
    if (cfg.exploration.eps_min < 0.0 || cfg.exploration.eps_min > 1.0) {
      throw ConfigError("exploration.eps_min: must lie in [0,1]");
    }
  }
  cfg.n_steps = internal::GetOr<long long>(j, "n_steps", 0);
  cfg.n_episodes = internal::GetOr<long long>(j, "n_episodes", 0);
  cfg.max_episode_len = internal::GetOr<int>(j, "max_episode_len", 200);
  cfg.checkpoint_every = internal::GetOr<long long>(j, "checkpoint_every", -1);
  cfg.seed = internal::GetOr<std::uint64_t>(j, "seed", 0);
  cfg.certify_tol = internal::GetOr<double>(j, "certify_tol", kDefaultNashTolerance);
  cfg.blind_observation = internal::GetOr<bool>(j, "blind_observation", false);

  cfg.ValidatePairing();
  cfg.BuildGame();  // surfaces environment field errors at parse time
  if (cfg.n_steps < 1 && cfg.n_episodes < 1) {
    throw ConfigError("config: one of n_steps / n_episodes must be >= 1");
  }
  return cfg;
}

inline nlohmann::json ExperimentConfig::ToJson() const {
  nlohmann::json j;
  j["version"] = 1;
  j["name"] = name;
  j["environment"] = environment;
  j["learners"] = {{"player_1", LearnerKindName(learners[0])},
                   {"player_2", LearnerKindName(learners[1])}};
  j["schedule"] = {
      {"kind", schedule.kind == LearningRateSchedule::Kind::kGlobalStair
                   ? "global_stair"
                   : "per_visit_count"},
      {"stair_width", schedule.stair_width},
      {"offset", schedule.offset}};
  j["exploration"] = {{"eps_min", exploration.eps_min},
                      {"t_scale", exploration.t_scale}};
  j["n_steps"] = n_steps;
  j["n_episodes"] = n_episodes;
  j["max_episode_len"] = max_episode_len;
  j["checkpoint_every"] = checkpoint_every;
  j["seed"] = seed;
  j["certify_tol"] = certify_tol;
  j["blind_observation"] = blind_observation;
  return j;
}

inline StochasticGame ExperimentConfig::BuildGame() const {
  const auto& env = environment;
  const std::string type =
      internal::GetRequired<std::string>(env, "type", "environment");
  if (type == "random_game") {
    internal::RejectUnknownKeys(
        env, {"type", "d1", "d2", "d_s", "h", "gamma_1", "gamma_2", "seed"},
        "environment");
    RandomGameSpec spec;
    spec.d1 = internal::GetOr<int>(env, "d1", spec.d1);
    spec.d2 = internal::GetOr<int>(env, "d2", spec.d2);
    spec.d_s = internal::GetOr<int>(env, "d_s", spec.d_s);
    spec.h = internal::GetOr<double>(env, "h", spec.h);
    spec.gamma_1 = internal::GetOr<double>(env, "gamma_1", spec.gamma_1);
    spec.gamma_2 = internal::GetOr<double>(env, "gamma_2", spec.gamma_2);
    spec.seed = internal::GetOr<std::uint64_t>(env, "seed", 0);
    try {
      return GenerateRandomGame(spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("environment: ") + e.what());
    }
  }
  if (type == "gridworld") {
    internal::RejectUnknownKeys(
        env,
        {"type", "width", "height", "start_1", "start_2", "target_1",
         "target_2", "gamma_1", "gamma_2"},
        "environment");
    GridworldSpec spec;
    spec.width = internal::GetOr<int>(env, "width", spec.width);
    spec.height = internal::GetOr<int>(env, "height", spec.height);
    spec.start_1 = internal::GetOr<int>(env, "start_1", spec.start_1);
    spec.start_2 = internal::GetOr<int>(env, "start_2", spec.start_2);
    spec.target_1 = internal::GetOr<int>(env, "target_1", spec.target_1);
    spec.target_2 = internal::GetOr<int>(env, "target_2", spec.target_2);
    spec.gamma_1 = internal::GetOr<double>(env, "gamma_1", spec.gamma_1);
    spec.gamma_2 = internal::GetOr<double>(env, "gamma_2", spec.gamma_2);
    try {
      return BuildGridworld(spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("environment: ") + e.what());
    }
  }
  if (type == "spurious") {
    internal::RejectUnknownKeys(
        env, {"type", "base", "n_states", "seed", "gamma_1", "gamma_2"},
        "environment");
    const std::string base =
        internal::GetRequired<std::string>(env, "base", "environment");
    for (const auto& fixture : CanonicalGames()) {
      if (fixture.name == base) {
        return BuildSpuriousGame(fixture.bimatrix,
                                 internal::GetOr<int>(env, "n_states", 4),
                                 internal::GetOr<std::uint64_t>(env, "seed", 0),
                                 internal::GetOr<double>(env, "gamma_1", 0.9),
                                 internal::GetOr<double>(env, "gamma_2", 0.8));
      }
    }
    throw ConfigError("environment.base: unknown fixture '" + base + "'");
  }
  if (type == "canonical") {
    internal::RejectUnknownKeys(env, {"type", "name", "gamma_1", "gamma_2"},
                                "environment");
    const std::string name =
        internal::GetRequired<std::string>(env, "name", "environment");
    for (const auto& fixture : CanonicalGames()) {
      if (fixture.name == name) {
        return RepeatedGame(fixture.bimatrix,
                            internal::GetOr<double>(env, "gamma_1", 0.9),
                            internal::GetOr<double>(env, "gamma_2", 0.8));
      }
    }
    throw ConfigError("environment.name: unknown fixture '" + name + "'");
  }
  if (type == "json") {
    internal::RejectUnknownKeys(env, {"type", "path"}, "environment");
    const std::string path =
        internal::GetRequired<std::string>(env, "path", "environment");
    if (!std::filesystem::exists(path)) {
      throw ConfigError("environment.path: no such file '" + path + "'");
    }
    return LoadGame(path);
  }
  throw ConfigError("environment.type: unknown type '" + type + "'");
}

// --- strategy/table serialization --------------------------------------

inline nlohmann::json ProfileToJson(const StrategyProfile& profile) {
  nlohmann::json j;
  for (int i = 0; i < 2; ++i) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : profile.pi(i)) {
      nlohmann::json r = nlohmann::json::array();
      for (int a = 0; a < row.size(); ++a) r.push_back(row[a]);
      rows.push_back(std::move(r));
    }
    j[i == 0 ? "pi_1" : "pi_2"] = std::move(rows);
  }
  return j;
}

inline StrategyProfile ProfileFromJson(const nlohmann::json& j) {
  StrategyProfile profile;
  for (int i = 0; i < 2; ++i) {
    const auto& rows = j.at(i == 0 ? "pi_1" : "pi_2");
    auto& out = i == 0 ? profile.pi_1 : profile.pi_2;
    for (const auto& row : rows) {
      out.push_back(SimplexVector(row.get<std::vector<double>>()));
    }
  }
  return profile;
}

// --- experiment runner ---------------------------------------------------

struct ExperimentResult {
  StrategyProfile profile;
  NashCertificate certificate;
  ReconstructedQ reconstruction;
  double mean_late_reward_1 = 0.0;  // over the final 10% of steps
  double mean_late_reward_2 = 0.0;
  double final_metric_1 = 0.0;  // convergence metric at the last checkpoint
  double final_metric_2 = 0.0;
  long long steps_recorded = 0;
  double max_abs_q_1 = 0.0;
  double max_abs_q_2 = 0.0;
};

namespace internal {

inline std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline void WriteFile(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

}  // namespace internal

// Runs one configured experiment and writes the five artifacts into out_dir:
// config.json (resolved snapshot), trace.csv, checkpoints.csv,
// certificate.json, tables.json. Identical config+seed produce byte-identical
// files.
inline ExperimentResult RunExperiment(const ExperimentConfig& config,
                                      const std::string& out_dir) {
  config.ValidatePairing();
  const StochasticGame game = config.BuildGame();
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  LearnOptions options;
  options.schedule = config.schedule;
  options.exploration = config.exploration;
  options.n_steps = config.n_steps;
  options.n_episodes = config.n_episodes;
  options.max_episode_len = config.max_episode_len;
  long long checkpoint_every = config.checkpoint_every;
  if (checkpoint_every < 0) checkpoint_every = game.IsEpisodic() ? 0 : 50;
  options.checkpoint_every = checkpoint_every;
  if (config.blind_observation) {
    if (game.metadata().rfind("gridworld", 0) != 0) {
      throw ConfigError("blind_observation: only supported on gridworld");
    }
    GridworldSpec spec;  // observation map depends only on the grid size
    options.obs_1 = GridworldOwnLocationObservation(spec, 0);
    options.obs_2 = GridworldOwnLocationObservation(spec, 1);
  }

  std::ostringstream trace;
  trace << "t,s,a1,a2,r1,r2,alpha,epsilon,delta_1,delta_2\n";
  double late_sum_1 = 0.0, late_sum_2 = 0.0;
  long long late_count = 0, total_steps = 0;
  std::vector<std::pair<long long, std::array<double, 2>>> reward_tail;
  std::vector<TraceRow> all_rows;
  options.trace = [&](const TraceRow& row) {
    trace << row.t << ',' << row.s << ',' << row.a1 << ',' << row.a2 << ','
          << internal::FormatDouble(row.r1) << ','
          << internal::FormatDouble(row.r2) << ','
          << internal::FormatDouble(row.alpha) << ','
          << internal::FormatDouble(row.epsilon) << ','
          << internal::FormatDouble(row.delta_1) << ','
          << internal::FormatDouble(row.delta_2) << '\n';
    all_rows.push_back(row);
    ++total_steps;
  };

  ExperimentResult result;
  nlohmann::json tables;
  std::vector<std::pair<long long, std::array<MarginalQTable, 2>>> checkpoints;

  if (config.learners[0] == LearnerKind::kFullInfo) {
    auto full = RunFullInfo(game, options, EquilibriumSelector{}, config.seed);
    result.profile = full.profile;
    result.max_abs_q_1 = full.max_abs_q_1;
    result.max_abs_q_2 = full.max_abs_q_2;
    tables["kind"] = "joint";
    tables["q_1"] = full.q_1.data();
    tables["q_2"] = full.q_2.data();
  } else if (config.learners[0] == LearnerKind::kInference ||
             config.learners[0] == LearnerKind::kFictitious ||
             config.learners[1] == LearnerKind::kInference ||
             config.learners[1] == LearnerKind::kFictitious) {
    const int seat = (config.learners[0] == LearnerKind::kInference ||
                      config.learners[0] == LearnerKind::kFictitious)
                         ? 0
                         : 1;
    const auto method = config.learners[seat] == LearnerKind::kInference
                            ? OpponentModel::Method::kEmFilter
                            : OpponentModel::Method::kEmpiricalFrequency;
    auto inf = RunInferenceLearner(game, method, options, config.seed, seat);
    result.profile = inf.profile;
    result.max_abs_q_1 = seat == 0 ? inf.max_abs_q : inf.opponent_q.MaxAbs();
    result.max_abs_q_2 = seat == 0 ? inf.opponent_q.MaxAbs() : inf.max_abs_q;
    tables["kind"] = "inference";
    tables["q_joint"] = inf.q_joint.data();
    tables["q_hat"] = inf.q_hat.data();
    tables["opponent_q"] = inf.opponent_q.data();
    nlohmann::json model = nlohmann::json::array();
    for (const auto& row : inf.model.pi_hat) {
      std::vector<double> r(row.size());
      for (int a = 0; a < row.size(); ++a) r[a] = row[a];
      model.push_back(r);
    }
    tables["opponent_model"] = std::move(model);
  } else {
    // remaining pairings: partial_info and/or random baselines
    options.force_uniform = {config.learners[0] == LearnerKind::kRandom,
                             config.learners[1] == LearnerKind::kRandom};
    auto partial = RunPartialInfo(game, options, config.seed);
    result.profile = partial.profile;
    result.max_abs_q_1 = partial.max_abs_q_1;
    result.max_abs_q_2 = partial.max_abs_q_2;
    checkpoints = std::move(partial.checkpoints);
    tables["kind"] = "marginal";
    tables["q_1"] = partial.q_1.data();
    tables["q_2"] = partial.q_2.data();
    tables["episodes_completed"] = partial.episodes_completed;
    tables["cap_events"] = partial.cap_events;
  }
  result.steps_recorded = total_steps;

  // late mean rewards over the final 10% of recorded steps
  const long long cut = total_steps - total_steps / 10;
  for (const auto& row : all_rows) {
    if (row.t >= cut) {
      late_sum_1 += row.r1;
      late_sum_2 += row.r2;
      ++late_count;
    }
  }
  if (late_count > 0) {
    result.mean_late_reward_1 = late_sum_1 / late_count;
    result.mean_late_reward_2 = late_sum_2 / late_count;
  }

  // verification: reconstruction + certificate for the final profile
  result.reconstruction = ReconstructFullQ(game, result.profile, 1e-10);
  result.certificate = CertifyNash(game, result.profile, config.certify_tol);

  // checkpoint convergence metrics against the final reconstruction
  std::ostringstream ckpt;
  ckpt << "t,metric_1,metric_2\n";
  for (const auto& [t, snapshot] : checkpoints) {
    const double m1 =
        ConvergenceMetric(snapshot[0], result.reconstruction, result.profile, 0);
    const double m2 =
        ConvergenceMetric(snapshot[1], result.reconstruction, result.profile, 1);
    ckpt << t << ',' << internal::FormatDouble(m1) << ','
         << internal::FormatDouble(m2) << '\n';
    result.final_metric_1 = m1;
    result.final_metric_2 = m2;
  }

  tables["profile"] = ProfileToJson(result.profile);

  const auto cert_json = CertificateToJson(
      result.certificate, result.reconstruction, GameFingerprint(game),
      config.seed, config.schedule.name());

  internal::WriteFile(dir / "config.json", config.ToJson().dump(2) + "\n");
  internal::WriteFile(dir / "trace.csv", trace.str());
  internal::WriteFile(dir / "checkpoints.csv", ckpt.str());
  internal::WriteFile(dir / "certificate.json", cert_json.dump(2) + "\n");
  internal::WriteFile(dir / "tables.json", tables.dump() + "\n");
  return result;
}

// Multi-seed head-to-head runner. Seeds are split from each config's master
// seed as DeriveSeed(seed, run_index); per-run artifacts land in
// out_dir/<config name>/seed<k>/ and the summary CSV in out_dir/compare.csv.
inline std::filesystem::path CompareLearners(
    const std::vector<ExperimentConfig>& configs, int n_seeds,
    const std::string& out_dir) {
  if (configs.empty()) throw ConfigError("compare: no configurations given");
  if (n_seeds < 1) throw ConfigError("compare: n_seeds must be >= 1");
  std::filesystem::create_directories(out_dir);
  std::ostringstream csv;
  csv << "config,learner_1,learner_2,seed_index,seed,gap_1,gap_2,metric_1,"
         "metric_2,mean_late_reward_1,mean_late_reward_2,wall_clock_s\n";
  for (const auto& base : configs) {
    std::vector<ExperimentResult> runs;
    std::vector<double> clocks;
    for (int k = 0; k < n_seeds; ++k) {
      ExperimentConfig cfg = base;
      cfg.seed = n_seeds == 1 ? base.seed : Rng::DeriveSeed(base.seed, k);
      const auto t0 = std::chrono::steady_clock::now();
      const auto run_dir = std::filesystem::path(out_dir) / base.name /
                           ("seed" + std::to_string(k));
      ExperimentResult result = RunExperiment(cfg, run_dir.string());
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      csv << base.name << ',' << LearnerKindName(base.learners[0]) << ','
          << LearnerKindName(base.learners[1]) << ',' << k << ',' << cfg.seed
          << ',' << internal::FormatDouble(result.certificate.gap_1) << ','
          << internal::FormatDouble(result.certificate.gap_2) << ','
          << internal::FormatDouble(result.final_metric_1) << ','
          << internal::FormatDouble(result.final_metric_2) << ','
          << internal::FormatDouble(result.mean_late_reward_1) << ','
          << internal::FormatDouble(result.mean_late_reward_2) << ','
          << internal::FormatDouble(secs) << '\n';
      runs.push_back(std::move(result));
      clocks.push_back(secs);
    }
    if (n_seeds > 1) {
      // mean and sample standard deviation rows across seeds
      auto stat_row = [&](auto select) {
        double mean = 0.0;
        for (const auto& r : runs) mean += select(r);
        mean /= runs.size();
        double var = 0.0;
        for (const auto& r : runs) {
          var += (select(r) - mean) * (select(r) - mean);
        }
        var /= (runs.size() - 1);
        return std::pair<double, double>(mean, std::sqrt(var));
      };
      auto [g1m, g1s] = stat_row(
          [](const ExperimentResult& r) { return r.certificate.gap_1; });
      auto [g2m, g2s] = stat_row(
          [](const ExperimentResult& r) { return r.certificate.gap_2; });
      auto [r1m, r1s] = stat_row(
          [](const ExperimentResult& r) { return r.mean_late_reward_1; });
      auto [r2m, r2s] = stat_row(
          [](const ExperimentResult& r) { return r.mean_late_reward_2; });
      csv << base.name << ",summary,mean+/-sd,,,"
          << internal::FormatDouble(g1m) << "+/-" << internal::FormatDouble(g1s)
          << ',' << internal::FormatDouble(g2m) << "+/-"
          << internal::FormatDouble(g2s) << ",,,"
          << internal::FormatDouble(r1m) << "+/-" << internal::FormatDouble(r1s)
          << ',' << internal::FormatDouble(r2m) << "+/-"
          << internal::FormatDouble(r2s) << ",\n";
    }
  }
  const auto path = std::filesystem::path(out_dir) / "compare.csv";
  internal::WriteFile(path, csv.str());
  return path;
}

}  // namespace nashq

#endif  // NASHQ_EXPERIMENT_HPP_
