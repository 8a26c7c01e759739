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

#ifndef SELFPLAY_POLICIES_TABULAR_SOFTMAX_POLICY_H_
#define SELFPLAY_POLICIES_TABULAR_SOFTMAX_POLICY_H_

#include <memory>
#include <span>
#include <vector>

#include "selfplay/policies/policy.h"

namespace selfplay {

// One-hot observation followed by a linear layer of action logits, i.e. a
// logits table of shape [num_observations x num_actions].
class TabularSoftmaxPolicy final : public Policy {
 public:
  TabularSoftmaxPolicy(int num_observations, int num_actions);
  TabularSoftmaxPolicy(int num_observations, int num_actions,
                       std::vector<double> logits);

  std::span<double> logits() { return logits_; }
  std::span<const double> logits() const { return logits_; }
  std::span<double> row(int observation);
  std::span<const double> row(int observation) const;

  // Non-zero block of grad log pi(a|s): onehot(a) - pi(.|s), written into
  // `out` (size num_actions). All other rows of the full gradient are zero.
  // Throws std::domain_error if pi(a|s) underflows to zero.
  void LogProbGradientRow(int observation, int action,
                          std::span<double> out) const;
  // Full-shape gradient; convenient for tests, wasteful in training loops.
  std::vector<double> LogProbGradient(int observation, int action) const;

  // dH/dlogits for row s: -pi_j (log pi_j + H).
  void EntropyGradientRow(int observation, std::span<double> out) const;

  int num_actions() const override { return num_actions_; }
  int num_observations() const override { return num_observations_; }
  void Distribution(int observation, std::span<double> out) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<TabularSoftmaxPolicy>(*this);
  }

 private:
  int num_observations_;
  int num_actions_;
  std::vector<double> logits_;
};

// Tabular state-value baseline, one entry per observation.
class ValueTable {
 public:
  explicit ValueTable(int num_observations)
      : values_(num_observations, 0.0) {}
  explicit ValueTable(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int observation) const { return values_.at(observation); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Shannon entropy (nats) of pi(.|observation).
double Entropy(const Policy& policy, int observation);

}  // namespace selfplay

#endif  // SELFPLAY_POLICIES_TABULAR_SOFTMAX_POLICY_H_
