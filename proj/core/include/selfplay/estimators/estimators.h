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

#ifndef SELFPLAY_ESTIMATORS_ESTIMATORS_H_
#define SELFPLAY_ESTIMATORS_ESTIMATORS_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "selfplay/games/environment.h"
#include "selfplay/games/matrix_game.h"
#include "selfplay/policies/simplex_policy.h"
#include "selfplay/policies/tabular_softmax_policy.h"

namespace selfplay {

// Monte-Carlo estimate of f(x, y) = E[sum_t gamma^t r_t].
struct PayoffEstimate {
  double mean = 0.0;
  int64_t m = 0;
  double bound = 0.0;  // a priori |return| bound R
  double variance = 0.0;  // per-sample variance of the return
};

// Mean discounted Player-2 return. Throws std::invalid_argument on an empty
// batch or a batch with mixed discount factors.
PayoffEstimate EstimatePayoff(std::span<const Trajectory> batch,
                              double bound);

// Hoeffding half-width for the mean of m samples confined to an interval of
// width `range`, holding with probability 1 - delta.
double HoeffdingRadius(double range, int64_t m, double delta);

// m >= 2 R^2 / eps^2 * ln(2 / delta): enough rollouts for |f_hat - f| <= eps
// with probability 1 - delta.
int64_t EvaluationSampleSize(double R, double epsilon, double delta);

// m >= 2 R^2 B^2 / eps^2 * ln(2 d / delta): enough rollouts for
// ||g_hat - g||_inf <= eps with probability 1 - delta.
int64_t PolicyGradientSampleSize(double R, double B, double epsilon,
                                 double delta, int d);

// (M y, M^T x): exact gradients of x^T M y.
std::pair<std::vector<double>, std::vector<double>> ExactGradient(
    const MatrixGame& game, std::span<const double> x,
    std::span<const double> y);

// Score-function estimate of grad f (Player-2 utility) with respect to one
// player's parameters. `variance` is the per-trajectory sample variance of
// each component, so sqrt(variance / m) is the standard error.
struct GradientEstimate {
  std::vector<double> g;
  std::vector<double> variance;
  int64_t m = 0;
};

// Q-hat defaults to the Player-2 reward-to-go when `q` is empty; otherwise
// q[i][t] is used for step t of trajectory i. For one-shot matrix games the
// default is the sampled payoff itself.
GradientEstimate ReinforceGradient(
    std::span<const Trajectory> batch, const SimplexPolicy& policy, Side side,
    std::span<const std::vector<double>> q = {});
GradientEstimate ReinforceGradient(
    std::span<const Trajectory> batch, const TabularSoftmaxPolicy& policy,
    Side side, std::span<const std::vector<double>> q = {});

// Discounted reward-to-go of each step, Player-2 centric.
std::vector<double> RewardToGo(const Trajectory& trajectory);

// delta_t = r_t + gamma V_{t+1} - V_t with V after the last step taken as 0;
// A_t = sum_l (gamma lambda)^l delta_{t+l}.
std::vector<double> GaeAdvantages(std::span<const double> rewards,
                                  std::span<const double> values,
                                  double gamma, double lambda);

// Advantages for one player: rewards are negated for x, and values are read
// from `values` at each step's observation.
std::vector<double> GaeAdvantages(const Trajectory& trajectory,
                                  const ValueTable& values, double gamma,
                                  double lambda, Side learner);

}  // namespace selfplay

#endif  // SELFPLAY_ESTIMATORS_ESTIMATORS_H_
