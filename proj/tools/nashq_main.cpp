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

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "nashq/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitCertificationFailure = 4;

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nashq::ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw nashq::ConfigError(path + ": " + e.what());
  }
}

int RunVerb(const std::string& config_path, const std::string& out_dir,
            bool require_pass) {
  const auto config = nashq::ExperimentConfig::FromJson(ReadJsonFile(config_path));
  const auto result = nashq::RunExperiment(config, out_dir);
  std::printf("run %s: gap_1=%.6g gap_2=%.6g passed=%s artifacts=%s\n",
              config.name.c_str(), result.certificate.gap_1,
              result.certificate.gap_2,
              result.certificate.passed ? "yes" : "no", out_dir.c_str());
  if (require_pass && !result.certificate.passed) return kExitCertificationFailure;
  return kExitOk;
}

int CompareVerb(const std::vector<std::string>& config_paths, int n_seeds,
                const std::string& out_dir) {
  std::vector<nashq::ExperimentConfig> configs;
  for (const auto& path : config_paths) {
    configs.push_back(nashq::ExperimentConfig::FromJson(ReadJsonFile(path)));
  }
  const auto csv = nashq::CompareLearners(configs, n_seeds, out_dir);
  std::printf("compare: %zu config(s) x %d seed(s) -> %s\n", configs.size(),
              n_seeds, csv.string().c_str());
  return kExitOk;
}

int VerifyVerb(const std::string& tables_path, const std::string& game_path,
               double tol, const std::string& out_path, bool require_pass) {
  const auto game = nashq::LoadGame(game_path);
  const auto tables = ReadJsonFile(tables_path);
  if (!tables.contains("profile")) {
    throw nashq::ConfigError(tables_path + ": missing 'profile'");
  }
  const auto profile = nashq::ProfileFromJson(tables.at("profile"));
  const auto recon = nashq::ReconstructFullQ(game, profile, 1e-10);
  const auto cert = nashq::CertifyNash(game, profile, tol);
  const auto j = nashq::CertificateToJson(cert, recon,
                                          nashq::GameFingerprint(game),
                                          /*seed=*/0, "verify");
  if (!out_path.empty()) {
    nashq::internal::WriteFile(out_path, j.dump(2) + "\n");
  }
  std::printf("verify: gap_1=%.6g gap_2=%.6g tol=%g passed=%s\n", cert.gap_1,
              cert.gap_2, tol, cert.passed ? "yes" : "no");
  if (require_pass && !cert.passed) return kExitCertificationFailure;
  return kExitOk;
}

int GenGameVerb(const std::string& spec_path, const std::string& out_path) {
  const auto j = ReadJsonFile(spec_path);
  nashq::internal::RejectUnknownKeys(
      j, {"d1", "d2", "d_s", "h", "gamma_1", "gamma_2", "seed"}, "spec");
  nashq::RandomGameSpec spec;
  spec.d1 = nashq::internal::GetOr<int>(j, "d1", spec.d1);
  spec.d2 = nashq::internal::GetOr<int>(j, "d2", spec.d2);
  spec.d_s = nashq::internal::GetOr<int>(j, "d_s", spec.d_s);
  spec.h = nashq::internal::GetOr<double>(j, "h", spec.h);
  spec.gamma_1 = nashq::internal::GetOr<double>(j, "gamma_1", spec.gamma_1);
  spec.gamma_2 = nashq::internal::GetOr<double>(j, "gamma_2", spec.gamma_2);
  spec.seed = nashq::internal::GetOr<std::uint64_t>(j, "seed", 0);
  nashq::StochasticGame game = [&] {
    try {
      return nashq::GenerateRandomGame(spec);
    } catch (const std::invalid_argument& e) {
      throw nashq::ConfigError(std::string("spec: ") + e.what());
    }
  }();
  nashq::SaveGame(game, out_path);
  std::printf("gen-game: wrote %s (%d states, %dx%d actions)\n",
              out_path.c_str(), game.n_states(), game.n_actions(0),
              game.n_actions(1));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learning and certifying Nash equilibria in 2-player "
               "stochastic games"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", tables_path, game_path,
              cert_out, spec_path, game_out;
  std::vector<std::string> compare_paths;
  bool require_pass = false;
  int n_seeds = 1;
  double tol = nashq::kDefaultNashTolerance;

  auto* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config_path, "experiment config JSON")->required();
  run->add_option("-o,--out", out_dir, "artifact directory");
  run->add_flag("--require-pass", require_pass,
                "exit 4 unless certification passes");

  auto* compare = app.add_subcommand("compare", "head-to-head learner table");
  compare->add_option("configs", compare_paths, "experiment configs")->required();
  compare->add_option("--seeds", n_seeds, "seeds per config");
  compare->add_option("-o,--out", out_dir, "artifact directory");

  auto* verify = app.add_subcommand("verify", "certify learned strategies");
  verify->add_option("tables", tables_path, "tables.json artifact")->required();
  verify->add_option("game", game_path, "game JSON")->required();
  verify->add_option("--tol", tol, "certification tolerance");
  verify->add_option("-o,--out", cert_out, "certificate output path");
  verify->add_flag("--require-pass", require_pass,
                   "exit 4 unless certification passes");

  auto* gen = app.add_subcommand("gen-game", "generate a random game");
  gen->add_option("spec", spec_path, "random-game spec JSON")->required();
  gen->add_option("-o,--out", game_out, "output game path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return RunVerb(config_path, out_dir, require_pass);
    if (compare->parsed()) return CompareVerb(compare_paths, n_seeds, out_dir);
    if (verify->parsed()) {
      return VerifyVerb(tables_path, game_path, tol, cert_out, require_pass);
    }
    if (gen->parsed()) return GenGameVerb(spec_path, game_out);
  } catch (const nashq::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolverFailure;
  }
  return kExitOk;
}
