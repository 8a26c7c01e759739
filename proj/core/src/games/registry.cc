// Copyright 2026 The Selfplay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "selfplay/games/registry.h"

#include <stdexcept>
#include <string>

namespace selfplay {

const std::vector<std::string>& EnvironmentIds() {
  static const std::vector<std::string> ids = {
      "matching_pennies", "skewed_mp", "rps", "extended_mp", "soccer"};
  return ids;
}

bool IsMatrixGameId(std::string_view id) {
  return id == "matching_pennies" || id == "skewed_mp" || id == "rps" ||
         id == "extended_mp";
}

MatrixGame MakeMatrixGame(std::string_view id, PayoffOrientation orientation) {
  auto build = [&]() -> MatrixGame {
    if (id == "matching_pennies") return MatchingPennies();
    if (id == "skewed_mp") return SkewedMatchingPennies();
    if (id == "rps") return RockPaperScissors();
    if (id == "extended_mp") return ExtendedMatchingPennies();
    throw std::invalid_argument("unknown matrix game id '" + std::string(id) +
                                "'");
  };
  MatrixGame game = build();
  return orientation == PayoffOrientation::kCaption ? game.Negated() : game;
}

std::shared_ptr<const Environment> MakeEnvironment(
    std::string_view id, const EnvironmentOptions& options) {
  if (id == "soccer") return std::make_shared<SoccerGame>(options.soccer);
  if (IsMatrixGameId(id)) {
    return std::make_shared<MatrixGame>(MakeMatrixGame(id, options.orientation));
  }
  throw std::invalid_argument("unknown environment id '" + std::string(id) +
                              "'");
}

}  // namespace selfplay
