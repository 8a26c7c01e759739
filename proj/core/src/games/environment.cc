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

#include "selfplay/games/environment.h"

#include <stdexcept>
#include <string>

namespace selfplay {

double Trajectory::DiscountedReturn() const {
  double total = 0.0;
  double discount = 1.0;
  for (const Step& s : steps) {
    total += discount * s.reward;
    discount *= gamma;
  }
  return total;
}

int Trajectory::Outcome() const {
  double total = 0.0;
  for (const Step& s : steps) total += s.reward;
  return (total > 0.0) - (total < 0.0);
}

void Environment::CheckPolicies(const Policy& x, const Policy& y) const {
  if (x.num_actions() != num_actions(Side::kX) ||
      y.num_actions() != num_actions(Side::kY)) {
    throw std::invalid_argument("policy action space does not match " +
                                std::string(id()));
  }
  if (x.num_observations() < num_observations() ||
      y.num_observations() < num_observations()) {
    throw std::invalid_argument("policy observation space does not match " +
                                std::string(id()));
  }
}

}  // namespace selfplay
