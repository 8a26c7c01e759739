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

#ifndef SELFPLAY_GAMES_SOCCER_H_
#define SELFPLAY_GAMES_SOCCER_H_

#include <memory>
#include <string_view>
#include <vector>

#include "selfplay/games/environment.h"

namespace selfplay {

// 6 x 9 grid-world soccer. Team A (Player 1, x) starts on the left half and
// attacks the right edge; team B (Player 2, y) starts on the right half and
// attacks the left edge. Cells are indexed row * 9 + col.
namespace soccer {

inline constexpr int kRows = 6;
inline constexpr int kCols = 9;
inline constexpr int kCells = kRows * kCols;
inline constexpr int kNumObservations = kCells * kCells * 2;  // 5832
inline constexpr int kNumActions = 5;

enum Action : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kNoop = 4 };

inline int Row(int cell) { return cell / kCols; }
inline int Col(int cell) { return cell % kCols; }
inline int Cell(int row, int col) { return row * kCols + col; }

}  // namespace soccer

struct SoccerConfig {
  int time_limit = 100;
  // Rows of the outer column that form each goal mouth.
  std::vector<int> goal_rows = {2, 3};

  // The shorter 50-move limit listed with the soccer hyper-parameters.
  static SoccerConfig ShortPreset();
  void Validate() const;
};

struct SoccerState {
  int pos_a = 0;
  int pos_b = 0;
  bool ball_a = true;
  int t = 0;
  bool done = false;

  bool operator==(const SoccerState&) const = default;
};

struct SoccerStepResult {
  SoccerState state;
  double reward = 0.0;  // +1 team B scored, -1 team A scored, 0 otherwise
  bool done = false;
};

int EncodeObservation(const SoccerState& s);
SoccerState DecodeObservation(int observation);

class SoccerGame final : public Environment {
 public:
  explicit SoccerGame(SoccerConfig config = {});

  const SoccerConfig& config() const { return config_; }

  SoccerState Reset(Rng& rng) const;

  // Resolves both moves in a uniformly random order. A move into the other
  // player's cell is cancelled and, if that player holds the ball, the mover
  // takes it. A ball holder stepping off its attacking edge through a goal
  // cell scores. Throws std::logic_error on a terminal state and
  // std::invalid_argument on an unknown action.
  SoccerStepResult Step(const SoccerState& s, int action_a, int action_b,
                        Rng& rng) const;

  bool IsGoalRow(int row) const;

  // Environment
  std::string_view id() const override { return "soccer"; }
  int num_observations() const override { return soccer::kNumObservations; }
  int num_actions(Side) const override { return soccer::kNumActions; }
  double reward_bound() const override { return 1.0; }
  int horizon() const override { return config_.time_limit; }
  Trajectory Rollout(const Policy& x, const Policy& y, Rng& rng,
                     double gamma = 1.0) const override;

 private:
  SoccerConfig config_;
  std::vector<bool> goal_row_;
};

// Deterministic heuristic opponent. With the ball: step toward the goal
// mouth, fixing the row first and then the column. Without the ball: step
// toward the opponent, row first.
class SoccerRulePolicy final : public Policy {
 public:
  SoccerRulePolicy(Side side, SoccerConfig config = {});

  int Act(const SoccerState& s) const;

  int num_actions() const override { return soccer::kNumActions; }
  int num_observations() const override { return soccer::kNumObservations; }
  void Distribution(int observation, std::span<double> out) const override;
  int Sample(int observation, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<SoccerRulePolicy>(*this);
  }

 private:
  Side side_;
  SoccerConfig config_;
};

}  // namespace selfplay

#endif  // SELFPLAY_GAMES_SOCCER_H_
