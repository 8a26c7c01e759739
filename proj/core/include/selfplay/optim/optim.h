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

#ifndef SELFPLAY_OPTIM_OPTIM_H_
#define SELFPLAY_OPTIM_OPTIM_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace selfplay {

// Euclidean projection onto the probability simplex (sort-and-threshold).
std::vector<double> ProjectSimplex(std::span<const double> v);

using Projector = std::function<std::vector<double>(std::span<const double>)>;

// project(params - sign * eta * grad). sign = +1 descends (Player 1),
// sign = -1 ascends (Player 2). An empty projector leaves the step
// unconstrained.
std::vector<double> SgdStep(std::span<const double> params,
                            std::span<const double> grad, double eta,
                            double sign, const Projector& projector = {});

// acc <- alpha acc + (1 - alpha) g^2;  params <- params - eta g / sqrt(acc + eps)
class RmsProp {
 public:
  explicit RmsProp(std::size_t size, double alpha = 0.99, double eps = 1e-8);

  double alpha() const { return alpha_; }
  std::span<const double> accumulator() const { return acc_; }

  // Descends on `grad`. Sizes must match the accumulator.
  void Step(std::span<double> params, std::span<const double> grad,
            double eta);
  // Same update restricted to [offset, offset + grad.size()) of the state,
  // for optimisers shared across several parameter blocks.
  void StepBlock(std::size_t offset, std::span<double> params,
                 std::span<const double> grad, double eta);

 private:
  double alpha_;
  double eps_;
  std::vector<double> acc_;
};

// Rescales all blocks jointly so their global L2 norm is at most max_norm.
// Returns the norm before clipping. max_norm <= 0 disables clipping.
double ClipByGlobalNorm(std::span<const std::span<double>> blocks,
                        double max_norm);

// eta_k = alpha (E_hat - 2 eps) / (||g_x||^2 + ||g_y||^2). Throws
// std::domain_error when both norms vanish while E_hat > 2 eps.
double AdaptiveLearningRate(double e_hat, double epsilon, double gx_norm_sq,
                            double gy_norm_sq, double alpha);

struct TheoryConfig {
  double R = 1.0;      // return bound
  double B = 1.0;      // score bound, max(||grad log pi||_inf, 1)
  double D = 2.0;      // L1 diameter of the strategy set
  int d = 2;           // parameter dimension
  double epsilon = 0.1;
  double delta = 0.1;
  double alpha = 1.0;  // step scale in (0, 2]

  // Throws std::invalid_argument when a field is out of range.
  void Validate() const;
};

// ceil(2 R^2 B^2 D^2 / eps^2 * ln(2 d / (delta 2^-k))), natural log.
int64_t SampleSizeSchedule(int k, const TheoryConfig& cfg);

enum class LrSchedule { kConstant, kLinearToZero, kTheoryAdaptive };

LrSchedule ParseLrSchedule(std::string_view name);
std::string_view LrScheduleName(LrSchedule s);

// Step size for iteration k of N under a fixed schedule. kTheoryAdaptive has
// no fixed value and is rejected here.
double ScheduledLearningRate(double base, LrSchedule schedule, int k, int N);

}  // namespace selfplay

#endif  // SELFPLAY_OPTIM_OPTIM_H_
