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

#ifndef SELFPLAY_GAMES_MATRIX_GAME_H_
#define SELFPLAY_GAMES_MATRIX_GAME_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selfplay/games/environment.h"

namespace selfplay {

// A probability vector over a finite action set.
using MixedStrategy = std::vector<double>;

// Throws std::invalid_argument unless p has `dim` non-negative entries
// summing to one within `tol`.
void CheckSimplex(std::span<const double> p, std::size_t dim,
                  double tol = 1e-9);

struct MatrixSample {
  int a = 0;  // Player 1 action (row)
  int b = 0;  // Player 2 action (column)
  double r = 0.0;
};

// Payoff M[a][b] is Player 2's utility f; Player 1 loses the same amount.
class MatrixGame final : public Environment {
 public:
  MatrixGame(std::string name, int rows, int cols, std::vector<double> payoff);
  MatrixGame(std::string name, const std::vector<std::vector<double>>& payoff);

  const std::string& name() const { return name_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int a, int b) const { return payoff_[a * cols_ + b]; }
  std::span<const double> payoff() const { return payoff_; }

  // Same game with every entry negated.
  MatrixGame Negated() const;

  // x^T M y.
  double Payoff(std::span<const double> x, std::span<const double> y) const;
  // M y: gradient of f with respect to x.
  std::vector<double> RowValues(std::span<const double> y) const;
  // M^T x: gradient of f with respect to y.
  std::vector<double> ColumnValues(std::span<const double> x) const;

  MatrixSample Sample(std::span<const double> x, std::span<const double> y,
                      Rng& rng) const;

  // Environment
  std::string_view id() const override { return name_; }
  int num_observations() const override { return 1; }
  int num_actions(Side side) const override {
    return side == Side::kX ? rows_ : cols_;
  }
  double reward_bound() const override { return max_abs_; }
  int horizon() const override { return 1; }
  Trajectory Rollout(const Policy& x, const Policy& y, Rng& rng,
                     double gamma = 1.0) const override;

 private:
  std::string name_;
  int rows_;
  int cols_;
  std::vector<double> payoff_;
  double max_abs_ = 0.0;
};

// Player-2 payoffs transcribed from the reference tables.
MatrixGame MatchingPennies();
MatrixGame SkewedMatchingPennies();
MatrixGame RockPaperScissors();
MatrixGame ExtendedMatchingPennies();

}  // namespace selfplay

#endif  // SELFPLAY_GAMES_MATRIX_GAME_H_
