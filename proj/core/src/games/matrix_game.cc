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

#include "selfplay/games/matrix_game.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace selfplay {

void CheckSimplex(std::span<const double> p, std::size_t dim, double tol) {
  if (p.size() != dim) {
    throw std::invalid_argument("strategy has dimension " +
                                std::to_string(p.size()) + ", expected " +
                                std::to_string(dim));
  }
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < -tol) {
      throw std::invalid_argument("strategy has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("strategy does not sum to one");
  }
}

MatrixGame::MatrixGame(std::string name, int rows, int cols,
                       std::vector<double> payoff)
    : name_(std::move(name)), rows_(rows), cols_(cols),
      payoff_(std::move(payoff)) {
  if (rows_ <= 0 || cols_ <= 0 ||
      payoff_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw std::invalid_argument("payoff matrix must be rectangular");
  }
  for (double v : payoff_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("payoff entries must be finite");
    }
    max_abs_ = std::max(max_abs_, std::abs(v));
  }
}

namespace {

std::vector<double> Flatten(const std::vector<std::vector<double>>& m,
                            int* cols) {
  if (m.empty()) throw std::invalid_argument("payoff matrix is empty");
  *cols = static_cast<int>(m.front().size());
  std::vector<double> flat;
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != *cols) {
      throw std::invalid_argument("payoff matrix must be rectangular");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

}  // namespace

MatrixGame::MatrixGame(std::string name,
                       const std::vector<std::vector<double>>& payoff)
    : MatrixGame(std::move(name), static_cast<int>(payoff.size()),
                 payoff.empty() ? 0 : static_cast<int>(payoff.front().size()),
                 [&payoff] {
                   int cols = 0;
                   return Flatten(payoff, &cols);
                 }()) {}

MatrixGame MatrixGame::Negated() const {
  std::vector<double> neg(payoff_.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -payoff_[i];
  return MatrixGame(name_, rows_, cols_, std::move(neg));
}

double MatrixGame::Payoff(std::span<const double> x,
                          std::span<const double> y) const {
  if (x.size() != static_cast<std::size_t>(rows_) ||
      y.size() != static_cast<std::size_t>(cols_)) {
    throw std::invalid_argument("strategy dimension does not match " + name_);
  }
  double total = 0.0;
  for (int a = 0; a < rows_; ++a) {
    double row = 0.0;
    for (int b = 0; b < cols_; ++b) row += at(a, b) * y[b];
    total += x[a] * row;
  }
  return total;
}

std::vector<double> MatrixGame::RowValues(std::span<const double> y) const {
  if (y.size() != static_cast<std::size_t>(cols_)) {
    throw std::invalid_argument("y dimension does not match " + name_);
  }
  std::vector<double> out(rows_, 0.0);
  for (int a = 0; a < rows_; ++a) {
    for (int b = 0; b < cols_; ++b) out[a] += at(a, b) * y[b];
  }
  return out;
}

std::vector<double> MatrixGame::ColumnValues(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(rows_)) {
    throw std::invalid_argument("x dimension does not match " + name_);
  }
  std::vector<double> out(cols_, 0.0);
  for (int a = 0; a < rows_; ++a) {
    for (int b = 0; b < cols_; ++b) out[b] += at(a, b) * x[a];
  }
  return out;
}

MatrixSample MatrixGame::Sample(std::span<const double> x,
                                std::span<const double> y, Rng& rng) const {
  if (x.size() != static_cast<std::size_t>(rows_) ||
      y.size() != static_cast<std::size_t>(cols_)) {
    throw std::invalid_argument("strategy dimension does not match " + name_);
  }
  MatrixSample s;
  s.a = rng.Categorical(x);
  s.b = rng.Categorical(y);
  s.r = at(s.a, s.b);
  return s;
}

Trajectory MatrixGame::Rollout(const Policy& x, const Policy& y, Rng& rng,
                               double gamma) const {
  CheckPolicies(x, y);
  Trajectory traj;
  traj.gamma = gamma;
  traj.horizon = 1;
  Step step;
  step.observation = 0;
  step.action_x = x.Sample(0, rng);
  step.action_y = y.Sample(0, rng);
  step.reward = at(step.action_x, step.action_y);
  traj.steps.push_back(step);
  return traj;
}

MatrixGame MatchingPennies() {
  return MatrixGame("matching_pennies", {{-1, 1}, {1, -1}});
}

MatrixGame SkewedMatchingPennies() {
  return MatrixGame("skewed_mp", {{-2, 0}, {1, -2}});
}

MatrixGame RockPaperScissors() {
  return MatrixGame("rps", {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
}

MatrixGame ExtendedMatchingPennies() {
  return MatrixGame("extended_mp", {{-1, 1, -0.5}, {1, -1, 0.5}});
}

}  // namespace selfplay
