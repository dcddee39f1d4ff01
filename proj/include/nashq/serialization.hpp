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

#ifndef NASHQ_SERIALIZATION_HPP_
#define NASHQ_SERIALIZATION_HPP_

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nashq/game.hpp"

namespace nashq {

// Game JSON schema:
//   n_states, n_actions: [|A1|,|A2|], gamma: [g1,g2],
//   rewards: two nested S x A1 x A2 arrays,
//   transitions: S x A1 x A2 x S.
// nlohmann emits shortest round-trip doubles, so load/save is lossless.
inline nlohmann::json GameToJson(const StochasticGame& game) {
  nlohmann::json j;
  j["n_states"] = game.n_states();
  j["n_actions"] = {game.n_actions(0), game.n_actions(1)};
  j["gamma"] = {game.gamma(0), game.gamma(1)};
  for (int player = 0; player < 2; ++player) {
    nlohmann::json table = nlohmann::json::array();
    for (int s = 0; s < game.n_states(); ++s) {
      nlohmann::json per_state = nlohmann::json::array();
      for (int a1 = 0; a1 < game.n_actions(0); ++a1) {
        nlohmann::json row = nlohmann::json::array();
        for (int a2 = 0; a2 < game.n_actions(1); ++a2) {
          row.push_back(game.reward(player, s, a1, a2));
        }
        per_state.push_back(std::move(row));
      }
      table.push_back(std::move(per_state));
    }
    j["rewards"].push_back(std::move(table));
  }
  nlohmann::json trans = nlohmann::json::array();
  for (int s = 0; s < game.n_states(); ++s) {
    nlohmann::json per_state = nlohmann::json::array();
    for (int a1 = 0; a1 < game.n_actions(0); ++a1) {
      nlohmann::json per_a1 = nlohmann::json::array();
      for (int a2 = 0; a2 < game.n_actions(1); ++a2) {
        per_a1.push_back(game.transition(s, a1, a2).Dense(game.n_states()));
      }
      per_state.push_back(std::move(per_a1));
    }
    trans.push_back(std::move(per_state));
  }
  j["transitions"] = std::move(trans);
  if (game.IsEpisodic()) {
    std::vector<int> terminals;
    for (int s = 0; s < game.n_states(); ++s) {
      if (game.IsTerminal(s)) terminals.push_back(s);
    }
    j["terminal_states"] = terminals;
    j["initial_state"] = game.initial_state();
  }
  if (!game.metadata().empty()) j["metadata"] = game.metadata();
  return j;
}

inline StochasticGame GameFromJson(const nlohmann::json& j) {
  const int n_states = j.at("n_states").get<int>();
  const int na1 = j.at("n_actions").at(0).get<int>();
  const int na2 = j.at("n_actions").at(1).get<int>();
  const double g1 = j.at("gamma").at(0).get<double>();
  const double g2 = j.at("gamma").at(1).get<double>();
  const std::size_t cells = static_cast<std::size_t>(n_states) * na1 * na2;
  std::vector<double> r1, r2;
  r1.reserve(cells);
  r2.reserve(cells);
  for (int player = 0; player < 2; ++player) {
    auto& out = player == 0 ? r1 : r2;
    const auto& table = j.at("rewards").at(player);
    for (int s = 0; s < n_states; ++s) {
      for (int a1 = 0; a1 < na1; ++a1) {
        for (int a2 = 0; a2 < na2; ++a2) {
          out.push_back(table.at(s).at(a1).at(a2).get<double>());
        }
      }
    }
  }
  std::vector<SparseDist> trans;
  trans.reserve(cells);
  for (int s = 0; s < n_states; ++s) {
    for (int a1 = 0; a1 < na1; ++a1) {
      for (int a2 = 0; a2 < na2; ++a2) {
        auto row = j.at("transitions").at(s).at(a1).at(a2).get<std::vector<double>>();
        if (static_cast<int>(row.size()) != n_states) {
          throw std::invalid_argument("GameFromJson: transition row size mismatch");
        }
        trans.push_back(SparseDist::FromDense(row));
      }
    }
  }
  StochasticGame game(n_states, na1, na2, std::move(r1), std::move(r2),
                      std::move(trans), g1, g2);
  if (j.contains("terminal_states")) {
    std::vector<bool> mask(n_states, false);
    for (int s : j.at("terminal_states").get<std::vector<int>>()) mask.at(s) = true;
    game.SetEpisodic(std::move(mask), j.at("initial_state").get<int>());
  }
  if (j.contains("metadata")) game.SetMetadata(j.at("metadata").get<std::string>());
  return game;
}

inline void SaveGame(const StochasticGame& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("SaveGame: cannot open " + path);
  out << GameToJson(game).dump(2) << "\n";
}

inline StochasticGame LoadGame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("LoadGame: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return GameFromJson(j);
}

}  // namespace nashq

#endif  // NASHQ_SERIALIZATION_HPP_
