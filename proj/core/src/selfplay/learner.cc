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

#include "selfplay/selfplay/learner.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

#include "selfplay/estimators/estimators.h"

namespace selfplay {

SimplexLearner::SimplexLearner(std::shared_ptr<const MatrixGame> game,
                               Side side, SimplexPolicy init,
                               SimplexLearnerOptions options)
    : game_(std::move(game)), side_(side), policy_(std::move(init)),
      options_(options) {
  if (!game_) throw std::invalid_argument("SimplexLearner: null game");
  if (policy_.num_actions() != game_->num_actions(side_)) {
    throw std::invalid_argument("SimplexLearner: policy size mismatch");
  }
  if (options_.schedule == LrSchedule::kTheoryAdaptive) {
    throw std::invalid_argument(
        "SimplexLearner: theory_adaptive needs the theory engine");
  }
}

int64_t SimplexLearner::Update(const Policy& opponent, int iteration,
                               int rounds, int64_t m, Rng& rng) {
  const double eta = ScheduledLearningRate(options_.lr, options_.schedule,
                                           iteration, options_.total_iterations);
  const double sign = side_ == Side::kX ? 1.0 : -1.0;
  const std::vector<double> opp = opponent.ActionDistribution(0);
  int64_t episodes = 0;
  for (int r = 0; r < rounds; ++r) {
    std::vector<double> grad;
    if (options_.mode == GradientMode::kExact) {
      grad = side_ == Side::kX ? game_->RowValues(opp)
                               : game_->ColumnValues(opp);
    } else {
      if (m <= 0) throw std::invalid_argument("SimplexLearner: m must be > 0");
      std::vector<Trajectory> batch;
      batch.reserve(m);
      for (int64_t i = 0; i < m; ++i) {
        batch.push_back(side_ == Side::kX ? game_->Rollout(policy_, opponent, rng)
                                          : game_->Rollout(opponent, policy_, rng));
      }
      episodes += m;
      grad = ReinforceGradient(batch, policy_, side_).g;
    }
    policy_.set_probabilities(
        SgdStep(policy_.probabilities(), grad, eta, sign, ProjectSimplex));
  }
  return episodes;
}

A2CLearner::A2CLearner(std::shared_ptr<const Environment> env, Side side,
                       A2CLearnerOptions options)
    : env_(std::move(env)),
      side_(side),
      options_(options),
      policy_(env_->num_observations(), env_->num_actions(side)),
      values_(env_->num_observations()),
      optimizer_(policy_.logits().size() + values_.values().size(),
                 options.rmsprop_alpha),
      policy_grad_(policy_.logits().size(), 0.0),
      value_grad_(values_.values().size(), 0.0) {
  if (options_.schedule == LrSchedule::kTheoryAdaptive) {
    throw std::invalid_argument("A2CLearner: theory_adaptive is matrix-only");
  }
}

int64_t A2CLearner::Update(const Policy& opponent, int iteration, int rounds,
                           int64_t m, Rng& rng) {
  if (m <= 0) throw std::invalid_argument("A2CLearner: m must be > 0");
  const double eta = ScheduledLearningRate(options_.lr, options_.schedule,
                                           iteration, options_.total_iterations);
  const int na = policy_.num_actions();
  std::vector<double> block(na);
  std::vector<double> ent(na);
  std::vector<Trajectory> batch(m);
  int64_t episodes = 0;

  for (int r = 0; r < rounds; ++r) {
    for (int64_t i = 0; i < m; ++i) {
      batch[i] = side_ == Side::kX ? env_->Rollout(policy_, opponent, rng,
                                                   options_.gamma)
                                   : env_->Rollout(opponent, policy_, rng,
                                                   options_.gamma);
    }
    episodes += m;

    std::fill(policy_grad_.begin(), policy_grad_.end(), 0.0);
    std::fill(value_grad_.begin(), value_grad_.end(), 0.0);
    std::size_t total_steps = 0;
    for (const Trajectory& t : batch) total_steps += t.steps.size();
    const double inv = 1.0 / static_cast<double>(total_steps);

    // Loss = -mean(A log pi) - c_ent mean(H) + c_v 0.5 mean((V - G)^2).
    for (const Trajectory& t : batch) {
      const std::vector<double> adv = GaeAdvantages(
          t, values_, options_.gamma, options_.lambda, side_);
      for (std::size_t s = 0; s < t.steps.size(); ++s) {
        const Step& st = t.steps[s];
        const int a = side_ == Side::kX ? st.action_x : st.action_y;
        policy_.LogProbGradientRow(st.observation, a, block);
        policy_.EntropyGradientRow(st.observation, ent);
        double* g = policy_grad_.data() +
                    static_cast<std::size_t>(st.observation) * na;
        for (int j = 0; j < na; ++j) {
          g[j] -= inv * (adv[s] * block[j] + options_.entropy_coef * ent[j]);
        }
        const double v = values_[st.observation];
        const double target = adv[s] + v;
        value_grad_[st.observation] += inv * options_.value_coef * (v - target);
      }
    }

    const std::array<std::span<double>, 2> blocks = {
        std::span<double>(policy_grad_), std::span<double>(value_grad_)};
    ClipByGlobalNorm(blocks, options_.max_grad_norm);
    optimizer_.StepBlock(0, policy_.logits(), policy_grad_, eta);
    optimizer_.StepBlock(policy_grad_.size(), values_.values(), value_grad_,
                         eta);
  }
  return episodes;
}

}  // namespace selfplay
