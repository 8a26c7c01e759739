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

#ifndef SELFPLAY_POLICIES_POLICY_H_
#define SELFPLAY_POLICIES_POLICY_H_

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "selfplay/common/rng.h"

namespace selfplay {

// Which player a policy controls. Player 1 (x) minimises f, Player 2 (y)
// maximises it. In soccer x drives team A and y drives team B.
enum class Side { kX = 0, kY = 1 };

inline std::string_view SideName(Side s) { return s == Side::kX ? "x" : "y"; }

// A stochastic policy over a finite action set, indexed by a flat
// observation id.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual int num_actions() const = 0;
  virtual int num_observations() const = 0;

  // Writes pi(.|observation) into `out` (size num_actions()).
  // Throws std::out_of_range for an observation outside the table.
  virtual void Distribution(int observation, std::span<double> out) const = 0;

  virtual int Sample(int observation, Rng& rng) const;

  virtual std::unique_ptr<Policy> Clone() const = 0;

  std::vector<double> ActionDistribution(int observation) const {
    std::vector<double> p(num_actions());
    Distribution(observation, p);
    return p;
  }

 protected:
  void CheckObservation(int observation) const;
};

// Uniformly random actions everywhere; the "random-action agent".
class UniformPolicy final : public Policy {
 public:
  UniformPolicy(int num_actions, int num_observations)
      : num_actions_(num_actions), num_observations_(num_observations) {}

  int num_actions() const override { return num_actions_; }
  int num_observations() const override { return num_observations_; }
  void Distribution(int observation, std::span<double> out) const override;
  int Sample(int observation, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<UniformPolicy>(*this);
  }

 private:
  int num_actions_;
  int num_observations_;
};

}  // namespace selfplay

#endif  // SELFPLAY_POLICIES_POLICY_H_
