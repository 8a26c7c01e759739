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

#include "selfplay/common/rng.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace selfplay {

Rng Rng::Derive(uint64_t seed, std::initializer_list<uint64_t> tags) {
  std::vector<uint32_t> words;
  words.reserve(2 + 2 * tags.size());
  auto push = [&words](uint64_t v) {
    words.push_back(static_cast<uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<uint32_t>(v >> 32));
  };
  push(seed);
  for (uint64_t t : tags) push(t);
  std::seed_seq seq(words.begin(), words.end());
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

int Rng::UniformInt(int n) {
  if (n <= 0) throw std::invalid_argument("UniformInt: n must be positive");
  const uint64_t range = static_cast<uint64_t>(n);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<int>(x % range);
}

int Rng::Categorical(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("Categorical: empty");
  const double u = Uniform();
  double acc = 0.0;
  int last_positive = -1;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  if (last_positive < 0) {
    throw std::invalid_argument("Categorical: no positive mass");
  }
  return last_positive;
}

double Rng::Exponential() {
  // 1 - U lies in (0, 1], so the log is finite.
  return -std::log(1.0 - Uniform());
}

}  // namespace selfplay
