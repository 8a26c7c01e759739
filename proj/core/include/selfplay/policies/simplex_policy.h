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

#ifndef SELFPLAY_POLICIES_SIMPLEX_POLICY_H_
#define SELFPLAY_POLICIES_SIMPLEX_POLICY_H_

#include <memory>
#include <span>
#include <vector>

#include "selfplay/policies/policy.h"

namespace selfplay {

// Probabilities below this are raised to it before forming 1/p scores. The
// induced bias is at most kProbabilityFloor * dimension.
inline constexpr double kProbabilityFloor = 1e-8;

// A mixed strategy parameterised directly by its probability vector, for
// one-shot matrix games. Every observation maps to the same distribution.
class SimplexPolicy final : public Policy {
 public:
  explicit SimplexPolicy(std::vector<double> probabilities);

  static SimplexPolicy Uniform(int num_actions);
  // Uniform on the simplex, i.e. Dirichlet(1, ..., 1).
  static SimplexPolicy RandomDirichlet(int num_actions, Rng& rng);

  const std::vector<double>& probabilities() const { return p_; }
  // Validates that p lies on the simplex (within 1e-9).
  void set_probabilities(std::vector<double> p);

  // d/dp log p[a] = e_a / p[a]. Throws std::domain_error if p[a] == 0.
  std::vector<double> LogProbGradient(int action) const;

  int num_actions() const override { return static_cast<int>(p_.size()); }
  int num_observations() const override { return 1; }
  void Distribution(int observation, std::span<double> out) const override;
  int Sample(int observation, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<SimplexPolicy>(*this);
  }

 private:
  std::vector<double> p_;
};

}  // namespace selfplay

#endif  // SELFPLAY_POLICIES_SIMPLEX_POLICY_H_
