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

#ifndef SELFPLAY_SELFPLAY_CHECKPOINT_H_
#define SELFPLAY_SELFPLAY_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "selfplay/policies/policy.h"

namespace selfplay {

enum class PolicyKind : uint32_t { kSimplex = 1, kTabularSoftmax = 2 };

// One agent (both seats) at one iteration. Parameters are probabilities for
// simplex policies and logits for tabular softmax policies, row-major
// [observation][action]. Doubles are stored bit-exact, little-endian.
struct Checkpoint {
  std::string env_id;
  std::string method;
  PolicyKind kind = PolicyKind::kSimplex;
  int num_observations = 1;
  int num_actions_x = 0;
  int num_actions_y = 0;
  int64_t iteration = 0;
  int agent = 0;
  uint64_t seed = 0;
  std::vector<double> x;
  std::vector<double> y;

  bool operator==(const Checkpoint&) const = default;
};

// Throws std::invalid_argument for policy types without a checkpoint form.
Checkpoint MakeCheckpoint(const Policy& x, const Policy& y,
                          std::string env_id, std::string method,
                          int64_t iteration, int agent, uint64_t seed);

std::string SerializeCheckpoint(const Checkpoint& c);
// Throws std::runtime_error on bad magic, version, or truncation.
Checkpoint DeserializeCheckpoint(const std::string& bytes);

void SaveCheckpoint(const Checkpoint& c, const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

std::unique_ptr<Policy> PolicyFromCheckpoint(const Checkpoint& c, Side side);

}  // namespace selfplay

#endif  // SELFPLAY_SELFPLAY_CHECKPOINT_H_
