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

#ifndef SELFPLAY_EVALUATION_NASH_H_
#define SELFPLAY_EVALUATION_NASH_H_

#include <span>
#include <vector>

#include "selfplay/games/matrix_game.h"

namespace selfplay {

struct NashSolution {
  MixedStrategy x;  // Player 1 (minimiser)
  MixedStrategy y;  // Player 2 (maximiser)
  double value = 0.0;  // Player-2 utility; Player 1's value is -value
  bool exact = false;  // solved and verified in rational arithmetic

  // Every extreme optimal strategy found, for games with several equilibria.
  // The optimal strategy sets are the convex hulls of these.
  std::vector<MixedStrategy> extreme_x;
  std::vector<MixedStrategy> extreme_y;
};

inline constexpr int kMaxNashDimension = 6;

// Support enumeration over square supports. Each candidate support pair is
// solved exactly with rational Gaussian elimination and accepted only if no
// pure deviation improves either player. Returns the equilibrium with the
// lexicographically smallest support. Throws std::invalid_argument for
// games larger than 6 x 6.
NashSolution SolveNash(const MatrixGame& game);

// max_b f(x, e_b) - min_a f(e_a, y). Non-negative; zero exactly at a saddle.
double DualityGap(const MatrixGame& game, std::span<const double> x,
                  std::span<const double> y);

// Squared Euclidean distance from (x, y) to the game's equilibrium set,
// computed as the distance to the convex hulls of the extreme optimal
// strategies.
class EquilibriumSet {
 public:
  explicit EquilibriumSet(const MatrixGame& game);
  explicit EquilibriumSet(NashSolution solution);

  const NashSolution& solution() const { return solution_; }

  double SquaredDistanceX(std::span<const double> x) const;
  double SquaredDistanceY(std::span<const double> y) const;
  double SquaredDistance(std::span<const double> x,
                         std::span<const double> y) const {
    return SquaredDistanceX(x) + SquaredDistanceY(y);
  }

 private:
  NashSolution solution_;
};

double EquilibriumDistance(std::span<const double> x,
                           std::span<const double> y, const MatrixGame& game);

// Squared distance from p to conv(vertices), exact for small vertex sets.
double SquaredDistanceToHull(std::span<const double> p,
                             const std::vector<std::vector<double>>& vertices);

}  // namespace selfplay

#endif  // SELFPLAY_EVALUATION_NASH_H_
