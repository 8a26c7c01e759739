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

#include "selfplay/optim/optim.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace selfplay {

std::vector<double> ProjectSimplex(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("ProjectSimplex: empty vector");
  std::vector<double> u(v.begin(), v.end());
  for (double x : u) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("ProjectSimplex: non-finite entry");
    }
  }
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  std::vector<double> p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = std::max(v[i] - theta, 0.0);
  return p;
}

std::vector<double> SgdStep(std::span<const double> params,
                            std::span<const double> grad, double eta,
                            double sign, const Projector& projector) {
  if (params.size() != grad.size()) {
    throw std::invalid_argument("SgdStep: params/grad size mismatch");
  }
  std::vector<double> next(params.size());
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = params[i] - sign * eta * grad[i];
  }
  return projector ? projector(next) : next;
}

RmsProp::RmsProp(std::size_t size, double alpha, double eps)
    : alpha_(alpha), eps_(eps), acc_(size, 0.0) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("RmsProp: alpha must be in [0, 1)");
  }
}

void RmsProp::Step(std::span<double> params, std::span<const double> grad,
                   double eta) {
  if (params.size() != acc_.size()) {
    throw std::invalid_argument("RmsProp: parameter size mismatch");
  }
  StepBlock(0, params, grad, eta);
}

void RmsProp::StepBlock(std::size_t offset, std::span<double> params,
                        std::span<const double> grad, double eta) {
  if (params.size() != grad.size() || offset + grad.size() > acc_.size()) {
    throw std::invalid_argument("RmsProp: block out of range");
  }
  double* acc = acc_.data() + offset;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    acc[i] = alpha_ * acc[i] + (1.0 - alpha_) * grad[i] * grad[i];
    if (grad[i] != 0.0) params[i] -= eta * grad[i] / std::sqrt(acc[i] + eps_);
  }
}

double ClipByGlobalNorm(std::span<const std::span<double>> blocks,
                        double max_norm) {
  double sq = 0.0;
  for (const auto& b : blocks) {
    for (double g : b) sq += g * g;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (const auto& b : blocks) {
      for (double& g : b) g *= scale;
    }
  }
  return norm;
}

double AdaptiveLearningRate(double e_hat, double epsilon, double gx_norm_sq,
                            double gy_norm_sq, double alpha) {
  if (alpha < 0.0 || alpha > 2.0) {
    throw std::invalid_argument("AdaptiveLearningRate: alpha must be in [0, 2]");
  }
  const double denom = gx_norm_sq + gy_norm_sq;
  if (alpha == 0.0) return 0.0;
  if (denom <= 0.0) {
    throw std::domain_error(
        "AdaptiveLearningRate: both gradient estimates vanish");
  }
  return alpha * (e_hat - 2.0 * epsilon) / denom;
}

void TheoryConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("theory: ") + what);
  };
  require(R > 0, "R must be positive");
  require(B >= 1, "B must be >= 1");
  require(D >= 1, "D must be >= 1");
  require(d > 1, "d must be > 1");
  require(epsilon > 0, "epsilon must be positive");
  require(delta > 0 && delta < 1, "delta must be in (0, 1)");
  require(alpha > 0 && alpha <= 2, "alpha must be in (0, 2]");
}

int64_t SampleSizeSchedule(int k, const TheoryConfig& cfg) {
  cfg.Validate();
  if (k < 0) throw std::invalid_argument("SampleSizeSchedule: k < 0");
  const double lead = 2.0 * cfg.R * cfg.R * cfg.B * cfg.B * cfg.D * cfg.D /
                      (cfg.epsilon * cfg.epsilon);
  // ln(2d / (delta 2^-k)) = ln(2d / delta) + k ln 2
  const double log_term =
      std::log(2.0 * cfg.d / cfg.delta) + k * std::log(2.0);
  return static_cast<int64_t>(std::ceil(lead * log_term));
}

LrSchedule ParseLrSchedule(std::string_view name) {
  if (name == "constant") return LrSchedule::kConstant;
  if (name == "linear_to_zero") return LrSchedule::kLinearToZero;
  if (name == "theory_adaptive") return LrSchedule::kTheoryAdaptive;
  throw std::invalid_argument("unknown lr_schedule '" + std::string(name) +
                              "'");
}

std::string_view LrScheduleName(LrSchedule s) {
  switch (s) {
    case LrSchedule::kConstant: return "constant";
    case LrSchedule::kLinearToZero: return "linear_to_zero";
    case LrSchedule::kTheoryAdaptive: return "theory_adaptive";
  }
  return "constant";
}

double ScheduledLearningRate(double base, LrSchedule schedule, int k, int N) {
  switch (schedule) {
    case LrSchedule::kConstant:
      return base;
    case LrSchedule::kLinearToZero:
      if (N <= 0) return base;
      return base * std::max(0.0, 1.0 - static_cast<double>(k) / N);
    case LrSchedule::kTheoryAdaptive:
      break;
  }
  throw std::invalid_argument(
      "theory_adaptive learning rates are computed per step");
}

}  // namespace selfplay
