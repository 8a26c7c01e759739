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

#ifndef SELFPLAY_SELFPLAY_LEARNER_H_
#define SELFPLAY_SELFPLAY_LEARNER_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "selfplay/games/matrix_game.h"
#include "selfplay/games/soccer.h"
#include "selfplay/optim/optim.h"
#include "selfplay/policies/simplex_policy.h"
#include "selfplay/policies/tabular_softmax_policy.h"

namespace selfplay {

// Trainable state for one seat (x or y) of one agent. With the opponent
// frozen the game is an MDP for the learner, so an update is a run of a
// single-agent RL algorithm against a fixed policy.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual Side side() const = 0;
  virtual const Policy& policy() const = 0;

  // `rounds` repetitions of {collect m rollouts vs `opponent`, estimate a
  // gradient, take an optimiser step}. Returns the number of episodes
  // played. Player 1 descends f, Player 2 ascends it.
  virtual int64_t Update(const Policy& opponent, int iteration, int rounds,
                         int64_t m, Rng& rng) = 0;

  virtual std::unique_ptr<Learner> Clone() const = 0;
};

enum class GradientMode { kExact, kPolicyGradient };

struct SimplexLearnerOptions {
  GradientMode mode = GradientMode::kExact;
  double lr = 0.03;
  LrSchedule schedule = LrSchedule::kConstant;
  int total_iterations = 1;  // for linear_to_zero
};

// Direct-probability policy for matrix games updated by projected SGD, with
// exact gradients (M y, M^T x) or REINFORCE estimates.
class SimplexLearner final : public Learner {
 public:
  SimplexLearner(std::shared_ptr<const MatrixGame> game, Side side,
                 SimplexPolicy init, SimplexLearnerOptions options);

  Side side() const override { return side_; }
  const Policy& policy() const override { return policy_; }
  const SimplexPolicy& simplex() const { return policy_; }

  int64_t Update(const Policy& opponent, int iteration, int rounds, int64_t m,
                 Rng& rng) override;

  std::unique_ptr<Learner> Clone() const override {
    return std::make_unique<SimplexLearner>(*this);
  }

 private:
  std::shared_ptr<const MatrixGame> game_;
  Side side_;
  SimplexPolicy policy_;
  SimplexLearnerOptions options_;
};

struct A2CLearnerOptions {
  double gamma = 0.97;
  double lambda = 0.95;
  double entropy_coef = 0.01;
  double value_coef = 1.0;  // on 0.5 * mean (V - G)^2
  double lr = 0.1;
  LrSchedule schedule = LrSchedule::kConstant;
  int total_iterations = 1;
  double max_grad_norm = 1.0;
  double rmsprop_alpha = 0.99;
};

// Advantage actor-critic with GAE on a tabular softmax policy and a tabular
// value baseline, optimised jointly by RmsProp after global-norm clipping.
class A2CLearner final : public Learner {
 public:
  A2CLearner(std::shared_ptr<const Environment> env, Side side,
             A2CLearnerOptions options);

  Side side() const override { return side_; }
  const Policy& policy() const override { return policy_; }
  const TabularSoftmaxPolicy& tabular() const { return policy_; }
  const ValueTable& values() const { return values_; }

  int64_t Update(const Policy& opponent, int iteration, int rounds, int64_t m,
                 Rng& rng) override;

  std::unique_ptr<Learner> Clone() const override {
    return std::make_unique<A2CLearner>(*this);
  }

 private:
  std::shared_ptr<const Environment> env_;
  Side side_;
  A2CLearnerOptions options_;
  TabularSoftmaxPolicy policy_;
  ValueTable values_;
  RmsProp optimizer_;
  std::vector<double> policy_grad_;
  std::vector<double> value_grad_;
};

}  // namespace selfplay

#endif  // SELFPLAY_SELFPLAY_LEARNER_H_
