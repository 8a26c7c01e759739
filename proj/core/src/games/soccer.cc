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

#include "selfplay/games/soccer.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace selfplay {

using namespace soccer;

SoccerConfig SoccerConfig::ShortPreset() {
  SoccerConfig c;
  c.time_limit = 50;
  return c;
}

void SoccerConfig::Validate() const {
  if (time_limit <= 0) {
    throw std::invalid_argument("soccer time_limit must be positive");
  }
  if (goal_rows.empty()) {
    throw std::invalid_argument("soccer goal_rows must not be empty");
  }
  for (int r : goal_rows) {
    if (r < 0 || r >= kRows) {
      throw std::invalid_argument("soccer goal row " + std::to_string(r) +
                                  " out of range");
    }
  }
}

int EncodeObservation(const SoccerState& s) {
  return ((s.pos_a * kCells) + s.pos_b) * 2 + (s.ball_a ? 1 : 0);
}

SoccerState DecodeObservation(int observation) {
  if (observation < 0 || observation >= kNumObservations) {
    throw std::out_of_range("soccer observation out of range");
  }
  SoccerState s;
  s.ball_a = (observation % 2) == 1;
  const int pair = observation / 2;
  s.pos_a = pair / kCells;
  s.pos_b = pair % kCells;
  return s;
}

SoccerGame::SoccerGame(SoccerConfig config)
    : config_(std::move(config)), goal_row_(kRows, false) {
  config_.Validate();
  for (int r : config_.goal_rows) goal_row_[r] = true;
}

bool SoccerGame::IsGoalRow(int row) const {
  return row >= 0 && row < kRows && goal_row_[row];
}

SoccerState SoccerGame::Reset(Rng& rng) const {
  constexpr int kHalfCols = 4;  // columns 0-3 and 5-8
  SoccerState s;
  const int a = rng.UniformInt(kRows * kHalfCols);
  const int b = rng.UniformInt(kRows * kHalfCols);
  s.pos_a = Cell(a / kHalfCols, a % kHalfCols);
  s.pos_b = Cell(b / kHalfCols, kCols - kHalfCols + b % kHalfCols);
  s.ball_a = rng.UniformInt(2) == 0;
  s.t = 0;
  s.done = false;
  return s;
}

SoccerStepResult SoccerGame::Step(const SoccerState& s, int action_a,
                                  int action_b, Rng& rng) const {
  if (s.done || s.t >= config_.time_limit) {
    throw std::logic_error("soccer: stepping a terminal state");
  }
  if (action_a < 0 || action_a >= kNumActions || action_b < 0 ||
      action_b >= kNumActions) {
    throw std::invalid_argument("soccer: unknown action");
  }
  SoccerStepResult out;
  out.state = s;
  SoccerState& n = out.state;

  const bool a_first = rng.UniformInt(2) == 0;
  for (int turn = 0; turn < 2 && !out.done; ++turn) {
    const bool mover_is_a = (turn == 0) == a_first;
    const int action = mover_is_a ? action_a : action_b;
    if (action == kNoop) continue;
    int& pos = mover_is_a ? n.pos_a : n.pos_b;
    const int other = mover_is_a ? n.pos_b : n.pos_a;
    const bool has_ball = mover_is_a == n.ball_a;

    int row = Row(pos);
    int col = Col(pos);
    switch (action) {
      case kUp: --row; break;
      case kDown: ++row; break;
      case kLeft: --col; break;
      case kRight: ++col; break;
    }
    if (row < 0 || row >= kRows || col < 0 || col >= kCols) {
      const bool through_goal =
          has_ball && IsGoalRow(row) &&
          (mover_is_a ? col == kCols : col == -1);
      if (through_goal) {
        out.reward = mover_is_a ? -1.0 : 1.0;
        out.done = true;
      }
      continue;
    }
    const int target = Cell(row, col);
    if (target == other) {
      if (!has_ball) n.ball_a = mover_is_a;
      continue;
    }
    pos = target;
  }

  n.t = s.t + 1;
  if (!out.done && n.t >= config_.time_limit) out.done = true;
  n.done = out.done;
  return out;
}

Trajectory SoccerGame::Rollout(const Policy& x, const Policy& y, Rng& rng,
                               double gamma) const {
  CheckPolicies(x, y);
  Trajectory traj;
  traj.gamma = gamma;
  traj.horizon = config_.time_limit;
  traj.steps.reserve(32);
  SoccerState s = Reset(rng);
  while (!s.done) {
    selfplay::Step step;
    step.observation = EncodeObservation(s);
    step.action_x = x.Sample(step.observation, rng);
    step.action_y = y.Sample(step.observation, rng);
    SoccerStepResult r = Step(s, step.action_x, step.action_y, rng);
    step.reward = r.reward;
    traj.steps.push_back(step);
    s = r.state;
  }
  return traj;
}

SoccerRulePolicy::SoccerRulePolicy(Side side, SoccerConfig config)
    : side_(side), config_(std::move(config)) {
  config_.Validate();
}

int SoccerRulePolicy::Act(const SoccerState& s) const {
  const bool is_a = side_ == Side::kX;
  const int me = is_a ? s.pos_a : s.pos_b;
  const int opp = is_a ? s.pos_b : s.pos_a;
  const bool has_ball = is_a == s.ball_a;
  const int row = Row(me);

  if (has_ball) {
    const auto& rows = config_.goal_rows;
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) {
      int best = rows.front();
      for (int r : rows) {
        if (std::abs(r - row) < std::abs(best - row)) best = r;
      }
      return best < row ? kUp : kDown;
    }
    return is_a ? kRight : kLeft;
  }

  const int orow = Row(opp);
  const int ocol = Col(opp);
  if (orow != row) return orow < row ? kUp : kDown;
  return ocol < Col(me) ? kLeft : kRight;
}

void SoccerRulePolicy::Distribution(int observation,
                                    std::span<double> out) const {
  CheckObservation(observation);
  std::fill(out.begin(), out.end(), 0.0);
  out[Act(DecodeObservation(observation))] = 1.0;
}

int SoccerRulePolicy::Sample(int observation, Rng&) const {
  CheckObservation(observation);
  return Act(DecodeObservation(observation));
}

}  // namespace selfplay
