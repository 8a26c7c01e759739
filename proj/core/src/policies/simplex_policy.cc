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

#include "selfplay/policies/simplex_policy.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "selfplay/games/matrix_game.h"

namespace selfplay {

SimplexPolicy::SimplexPolicy(std::vector<double> probabilities) {
  set_probabilities(std::move(probabilities));
}

SimplexPolicy SimplexPolicy::Uniform(int num_actions) {
  if (num_actions <= 0) throw std::invalid_argument("need at least one action");
  return SimplexPolicy(std::vector<double>(num_actions, 1.0 / num_actions));
}

SimplexPolicy SimplexPolicy::RandomDirichlet(int num_actions, Rng& rng) {
  if (num_actions <= 0) throw std::invalid_argument("need at least one action");
  std::vector<double> p(num_actions);
  double total = 0.0;
  for (double& v : p) {
    v = rng.Exponential();
    total += v;
  }
  for (double& v : p) v /= total;
  return SimplexPolicy(std::move(p));
}

void SimplexPolicy::set_probabilities(std::vector<double> p) {
  if (p.empty()) throw std::invalid_argument("empty probability vector");
  CheckSimplex(p, p.size());
  for (double& v : p) v = std::max(v, 0.0);
  p_ = std::move(p);
}

std::vector<double> SimplexPolicy::LogProbGradient(int action) const {
  if (action < 0 || action >= num_actions()) {
    throw std::out_of_range("action out of range");
  }
  if (p_[action] <= 0.0) {
    throw std::domain_error("score of a zero-probability action");
  }
  std::vector<double> g(p_.size(), 0.0);
  g[action] = 1.0 / std::max(p_[action], kProbabilityFloor);
  return g;
}

void SimplexPolicy::Distribution(int observation, std::span<double> out) const {
  CheckObservation(observation);
  std::copy(p_.begin(), p_.end(), out.begin());
}

int SimplexPolicy::Sample(int observation, Rng& rng) const {
  CheckObservation(observation);
  return rng.Categorical(p_);
}

}  // namespace selfplay
