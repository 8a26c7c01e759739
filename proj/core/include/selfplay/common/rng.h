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

#ifndef SELFPLAY_COMMON_RNG_H_
#define SELFPLAY_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace selfplay {

// All randomness flows through Rng. Streams are derived from a root seed and
// a tuple of integer tags, so work split across threads draws the same
// numbers no matter how it is scheduled.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Stream keyed by (seed, tags...). Uses std::seed_seq, whose mixing is
  // fully specified by the standard and therefore portable.
  static Rng Derive(uint64_t seed, std::initializer_list<uint64_t> tags);

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Lemire-style rejection keeps it unbiased.
  int UniformInt(int n);

  // Draws an index from a discrete distribution. `probs` need not be
  // normalised exactly; any residual mass falls on the last positive entry.
  int Categorical(std::span<const double> probs);

  // Standard exponential, for Dirichlet sampling.
  double Exponential();

 private:
  std::mt19937_64 engine_;
};

// Common stream tags. Values are part of the reproducibility contract.
enum class StreamTag : uint64_t {
  kInit = 1,
  kEvaluate = 2,
  kUpdateX = 3,
  kUpdateY = 4,
  kOpponentPick = 5,
  kChampion = 6,
  kTournament = 7,
  kTheory = 8,
  kMisc = 9,
};

inline uint64_t Tag(StreamTag t) { return static_cast<uint64_t>(t); }

}  // namespace selfplay

#endif  // SELFPLAY_COMMON_RNG_H_
