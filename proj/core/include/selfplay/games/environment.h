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

#ifndef SELFPLAY_GAMES_ENVIRONMENT_H_
#define SELFPLAY_GAMES_ENVIRONMENT_H_

#include <string>
#include <string_view>
#include <vector>

#include "selfplay/common/rng.h"
#include "selfplay/policies/policy.h"

namespace selfplay {

// One simultaneous-move step. `reward` is Player 2's (y's) reward; Player 1
// receives its negation.
struct Step {
  int observation = 0;
  int action_x = 0;
  int action_y = 0;
  double reward = 0.0;
};

struct Trajectory {
  std::vector<Step> steps;
  double gamma = 1.0;
  int horizon = 1;

  // sum_t gamma^t r_t, Player-2 centric.
  double DiscountedReturn() const;
  // Sign of the summed reward: +1 y wins, -1 x wins, 0 draw.
  int Outcome() const;
};

// Immutable description of a two-player zero-sum game. Rollouts keep all
// mutable state on the stack so one environment can serve many threads.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view id() const = 0;
  virtual int num_observations() const = 0;
  virtual int num_actions(Side side) const = 0;
  // A priori bound R on |sum_t gamma^t r_t|.
  virtual double reward_bound() const = 0;
  // Maximum number of steps in an episode.
  virtual int horizon() const = 0;

  // Plays one episode. Throws std::invalid_argument if a policy does not
  // match the environment's observation/action spaces.
  virtual Trajectory Rollout(const Policy& x, const Policy& y, Rng& rng,
                             double gamma = 1.0) const = 0;

 protected:
  void CheckPolicies(const Policy& x, const Policy& y) const;
};

}  // namespace selfplay

#endif  // SELFPLAY_GAMES_ENVIRONMENT_H_
