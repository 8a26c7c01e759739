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

#ifndef SELFPLAY_SELFPLAY_THEORY_H_
#define SELFPLAY_SELFPLAY_THEORY_H_

#include <cstdint>
#include <vector>

#include "selfplay/games/matrix_game.h"
#include "selfplay/optim/optim.h"

namespace selfplay {

// All points of the simplex in `dim` coordinates whose entries are multiples
// of `step` (1 / step must be an integer within 1e-9).
std::vector<MixedStrategy> SimplexGrid(int dim, double step);

struct TheoryRunConfig {
  TheoryConfig theory;
  MixedStrategy x0;
  MixedStrategy y0;
  std::vector<MixedStrategy> candidates_x;  // perturbations u for y
  std::vector<MixedStrategy> candidates_y;  // perturbations v for x
  // Exact payoffs and gradients; otherwise Monte-Carlo with m_k samples.
  bool exact = true;
  int max_iterations = 10000;
  uint64_t seed = 0;

  void Validate(const MatrixGame& game) const;
};

// One evaluate-perturb-update step. Candidate indices refer to the
// configured sets; the index equal to the set size denotes the current
// iterate itself, which is always a candidate.
struct GapRecord {
  int k = 0;
  double e_hat = 0.0;  // f(x, v) - f(u, y)
  int u_index = 0;
  int v_index = 0;
  double f_xv = 0.0;
  double f_xy = 0.0;
  double f_uy = 0.0;
  double eta = 0.0;    // 0 on the stopping step
  int64_t m_k = 0;     // 0 in exact mode
  MixedStrategy x;     // iterate k
  MixedStrategy y;
  std::vector<double> gx;  // grad_x f(x, v); empty on the stopping step
  std::vector<double> gy;  // grad_y f(u, y)
};

struct TheoryResult {
  MixedStrategy x;
  MixedStrategy y;
  std::vector<GapRecord> records;
  bool stopped = false;  // E_hat <= 3 eps reached
};

// x descends along grad_x f(x, v), y ascends along grad_y f(u, y), both
// projected onto the simplex, with the adaptive step of the theory config.
TheoryResult TrainSingleTheory(const MatrixGame& game,
                               const TheoryRunConfig& config);

}  // namespace selfplay

#endif  // SELFPLAY_SELFPLAY_THEORY_H_
