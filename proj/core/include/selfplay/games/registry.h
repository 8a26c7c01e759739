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

#ifndef SELFPLAY_GAMES_REGISTRY_H_
#define SELFPLAY_GAMES_REGISTRY_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfplay/games/environment.h"
#include "selfplay/games/matrix_game.h"
#include "selfplay/games/soccer.h"

namespace selfplay {

// kTable uses the payoff tables verbatim. kCaption flips the sign, which is
// the reading of the matching-pennies caption ("Player 2 wins on a match").
enum class PayoffOrientation { kTable, kCaption };

struct EnvironmentOptions {
  SoccerConfig soccer;
  PayoffOrientation orientation = PayoffOrientation::kTable;
};

// "matching_pennies", "skewed_mp", "rps", "extended_mp", "soccer".
const std::vector<std::string>& EnvironmentIds();
bool IsMatrixGameId(std::string_view id);

// Throws std::invalid_argument for an unknown id.
MatrixGame MakeMatrixGame(std::string_view id,
                          PayoffOrientation orientation =
                              PayoffOrientation::kTable);
std::shared_ptr<const Environment> MakeEnvironment(
    std::string_view id, const EnvironmentOptions& options = {});

}  // namespace selfplay

#endif  // SELFPLAY_GAMES_REGISTRY_H_
