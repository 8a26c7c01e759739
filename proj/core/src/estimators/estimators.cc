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

#include "selfplay/estimators/estimators.h"

#include <cmath>
#include <stdexcept>

namespace selfplay {

PayoffEstimate EstimatePayoff(std::span<const Trajectory> batch,
                              double bound) {
  if (batch.empty()) {
    throw std::invalid_argument("EstimatePayoff: empty batch");
  }
  const double gamma = batch.front().gamma;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const Trajectory& t : batch) {
    if (t.gamma != gamma) {
      throw std::invalid_argument("EstimatePayoff: mixed discount factors");
    }
    const double g = t.DiscountedReturn();
    sum += g;
    sum_sq += g * g;
  }
  PayoffEstimate est;
  est.m = static_cast<int64_t>(batch.size());
  est.mean = sum / est.m;
  est.bound = bound;
  est.variance =
      est.m > 1 ? std::max(0.0, (sum_sq - est.m * est.mean * est.mean) /
                                    (est.m - 1))
                : 0.0;
  return est;
}

double HoeffdingRadius(double range, int64_t m, double delta) {
  if (m <= 0 || delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("HoeffdingRadius: need m > 0, delta in (0,1)");
  }
  return range * std::sqrt(std::log(2.0 / delta) / (2.0 * m));
}

int64_t EvaluationSampleSize(double R, double epsilon, double delta) {
  if (R <= 0 || epsilon <= 0 || delta <= 0 || delta >= 1) {
    throw std::invalid_argument("EvaluationSampleSize: invalid arguments");
  }
  return static_cast<int64_t>(
      std::ceil(2.0 * R * R / (epsilon * epsilon) * std::log(2.0 / delta)));
}

int64_t PolicyGradientSampleSize(double R, double B, double epsilon,
                                 double delta, int d) {
  if (R <= 0 || B <= 0 || epsilon <= 0 || delta <= 0 || delta >= 1 || d < 1) {
    throw std::invalid_argument("PolicyGradientSampleSize: invalid arguments");
  }
  return static_cast<int64_t>(std::ceil(2.0 * R * R * B * B /
                                        (epsilon * epsilon) *
                                        std::log(2.0 * d / delta)));
}

std::pair<std::vector<double>, std::vector<double>> ExactGradient(
    const MatrixGame& game, std::span<const double> x,
    std::span<const double> y) {
  return {game.RowValues(y), game.ColumnValues(x)};
}

std::vector<double> RewardToGo(const Trajectory& trajectory) {
  std::vector<double> out(trajectory.steps.size());
  double acc = 0.0;
  for (std::size_t t = out.size(); t-- > 0;) {
    acc = trajectory.steps[t].reward + trajectory.gamma * acc;
    out[t] = acc;
  }
  return out;
}

namespace {

// Accumulates per-trajectory gradient samples into mean and variance.
class GradientAccumulator {
 public:
  explicit GradientAccumulator(std::size_t dim)
      : sum_(dim, 0.0), sum_sq_(dim, 0.0), sample_(dim, 0.0) {}

  std::vector<double>& sample() { return sample_; }

  void Commit() {
    for (std::size_t k = 0; k < sample_.size(); ++k) {
      sum_[k] += sample_[k];
      sum_sq_[k] += sample_[k] * sample_[k];
      sample_[k] = 0.0;
    }
    ++m_;
  }

  GradientEstimate Finish() const {
    GradientEstimate est;
    est.m = m_;
    est.g.resize(sum_.size());
    est.variance.assign(sum_.size(), 0.0);
    for (std::size_t k = 0; k < sum_.size(); ++k) {
      est.g[k] = sum_[k] / m_;
      if (m_ > 1) {
        est.variance[k] = std::max(
            0.0, (sum_sq_[k] - m_ * est.g[k] * est.g[k]) / (m_ - 1));
      }
    }
    return est;
  }

 private:
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
  std::vector<double> sample_;
  int64_t m_ = 0;
};

void CheckBatch(std::span<const Trajectory> batch,
                std::span<const std::vector<double>> q) {
  if (batch.empty()) {
    throw std::invalid_argument("ReinforceGradient: empty batch");
  }
  if (!q.empty() && q.size() != batch.size()) {
    throw std::invalid_argument("ReinforceGradient: q/batch size mismatch");
  }
}

}  // namespace

GradientEstimate ReinforceGradient(std::span<const Trajectory> batch,
                                   const SimplexPolicy& policy, Side side,
                                   std::span<const std::vector<double>> q) {
  CheckBatch(batch, q);
  const auto& p = policy.probabilities();
  GradientAccumulator acc(p.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Trajectory& traj = batch[i];
    const std::vector<double> q_default = q.empty() ? RewardToGo(traj)
                                                    : std::vector<double>{};
    const std::vector<double>& qi = q.empty() ? q_default : q[i];
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      const Step& s = traj.steps[t];
      const int a = side == Side::kX ? s.action_x : s.action_y;
      if (p.at(a) <= 0.0) {
        throw std::domain_error("score of a zero-probability action");
      }
      acc.sample()[a] += qi[t] / std::max(p[a], kProbabilityFloor);
    }
    acc.Commit();
  }
  return acc.Finish();
}

GradientEstimate ReinforceGradient(std::span<const Trajectory> batch,
                                   const TabularSoftmaxPolicy& policy,
                                   Side side,
                                   std::span<const std::vector<double>> q) {
  CheckBatch(batch, q);
  const int na = policy.num_actions();
  GradientAccumulator acc(policy.logits().size());
  std::vector<double> block(na);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Trajectory& traj = batch[i];
    const std::vector<double> q_default = q.empty() ? RewardToGo(traj)
                                                    : std::vector<double>{};
    const std::vector<double>& qi = q.empty() ? q_default : q[i];
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      const Step& s = traj.steps[t];
      const int a = side == Side::kX ? s.action_x : s.action_y;
      policy.LogProbGradientRow(s.observation, a, block);
      const std::size_t base = static_cast<std::size_t>(s.observation) * na;
      for (int j = 0; j < na; ++j) acc.sample()[base + j] += block[j] * qi[t];
    }
    acc.Commit();
  }
  return acc.Finish();
}

std::vector<double> GaeAdvantages(std::span<const double> rewards,
                                  std::span<const double> values,
                                  double gamma, double lambda) {
  if (rewards.size() != values.size()) {
    throw std::invalid_argument("GaeAdvantages: rewards/values mismatch");
  }
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("GaeAdvantages: lambda must be in [0, 1]");
  }
  std::vector<double> adv(rewards.size());
  double running = 0.0;
  double next_value = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    const double delta = rewards[t] + gamma * next_value - values[t];
    running = delta + gamma * lambda * running;
    adv[t] = running;
    next_value = values[t];
  }
  return adv;
}

std::vector<double> GaeAdvantages(const Trajectory& trajectory,
                                  const ValueTable& values, double gamma,
                                  double lambda, Side learner) {
  const double sign = learner == Side::kY ? 1.0 : -1.0;
  std::vector<double> r(trajectory.steps.size());
  std::vector<double> v(trajectory.steps.size());
  for (std::size_t t = 0; t < r.size(); ++t) {
    r[t] = sign * trajectory.steps[t].reward;
    v[t] = values[trajectory.steps[t].observation];
  }
  return GaeAdvantages(r, v, gamma, lambda);
}

}  // namespace selfplay
