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

#include "selfplay/policies/tabular_softmax_policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace selfplay {

TabularSoftmaxPolicy::TabularSoftmaxPolicy(int num_observations,
                                           int num_actions)
    : TabularSoftmaxPolicy(
          num_observations, num_actions,
          std::vector<double>(
              static_cast<std::size_t>(std::max(num_observations, 0)) *
                  std::max(num_actions, 0),
              0.0)) {}

TabularSoftmaxPolicy::TabularSoftmaxPolicy(int num_observations,
                                           int num_actions,
                                           std::vector<double> logits)
    : num_observations_(num_observations),
      num_actions_(num_actions),
      logits_(std::move(logits)) {
  if (num_observations_ <= 0 || num_actions_ <= 0) {
    throw std::invalid_argument("tabular policy needs a non-empty table");
  }
  if (logits_.size() !=
      static_cast<std::size_t>(num_observations_) * num_actions_) {
    throw std::invalid_argument("logits table has the wrong size");
  }
}

std::span<double> TabularSoftmaxPolicy::row(int observation) {
  CheckObservation(observation);
  return std::span<double>(logits_).subspan(
      static_cast<std::size_t>(observation) * num_actions_, num_actions_);
}

std::span<const double> TabularSoftmaxPolicy::row(int observation) const {
  CheckObservation(observation);
  return std::span<const double>(logits_).subspan(
      static_cast<std::size_t>(observation) * num_actions_, num_actions_);
}

void TabularSoftmaxPolicy::Distribution(int observation,
                                        std::span<double> out) const {
  const auto z = row(observation);
  const double zmax = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (int a = 0; a < num_actions_; ++a) {
    out[a] = std::exp(z[a] - zmax);
    total += out[a];
  }
  for (int a = 0; a < num_actions_; ++a) out[a] /= total;
}

void TabularSoftmaxPolicy::LogProbGradientRow(int observation, int action,
                                              std::span<double> out) const {
  if (action < 0 || action >= num_actions_) {
    throw std::out_of_range("action out of range");
  }
  Distribution(observation, out);
  if (out[action] <= 0.0) {
    throw std::domain_error("score of a zero-probability action");
  }
  for (int a = 0; a < num_actions_; ++a) out[a] = -out[a];
  out[action] += 1.0;
}

std::vector<double> TabularSoftmaxPolicy::LogProbGradient(int observation,
                                                          int action) const {
  std::vector<double> g(logits_.size(), 0.0);
  LogProbGradientRow(
      observation, action,
      std::span<double>(g).subspan(
          static_cast<std::size_t>(observation) * num_actions_, num_actions_));
  return g;
}

void TabularSoftmaxPolicy::EntropyGradientRow(int observation,
                                              std::span<double> out) const {
  Distribution(observation, out);
  double h = 0.0;
  for (int a = 0; a < num_actions_; ++a) {
    if (out[a] > 0.0) h -= out[a] * std::log(out[a]);
  }
  for (int a = 0; a < num_actions_; ++a) {
    out[a] = out[a] > 0.0 ? -out[a] * (std::log(out[a]) + h) : 0.0;
  }
}

ValueTable::ValueTable(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  }
}

double Entropy(const Policy& policy, int observation) {
  const std::vector<double> p = policy.ActionDistribution(observation);
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

}  // namespace selfplay
