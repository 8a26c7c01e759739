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

#include "selfplay/policies/policy.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace selfplay {

void Policy::CheckObservation(int observation) const {
  if (observation < 0 || observation >= num_observations()) {
    throw std::out_of_range("observation " + std::to_string(observation) +
                            " outside [0, " +
                            std::to_string(num_observations()) + ")");
  }
}

int Policy::Sample(int observation, Rng& rng) const {
  const int n = num_actions();
  if (n <= 16) {
    std::array<double, 16> buf;
    std::span<double> probs(buf.data(), n);
    Distribution(observation, probs);
    return rng.Categorical(probs);
  }
  std::vector<double> probs(n);
  Distribution(observation, probs);
  return rng.Categorical(probs);
}

void UniformPolicy::Distribution(int observation, std::span<double> out) const {
  CheckObservation(observation);
  std::fill(out.begin(), out.end(), 1.0 / num_actions_);
}

int UniformPolicy::Sample(int observation, Rng& rng) const {
  CheckObservation(observation);
  return rng.UniformInt(num_actions_);
}

}  // namespace selfplay
