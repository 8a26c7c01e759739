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

#ifndef SELFPLAY_EXPERIMENT_CONFIG_H_
#define SELFPLAY_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfplay/games/registry.h"
#include "selfplay/optim/optim.h"
#include "selfplay/selfplay/learner.h"
#include "selfplay/selfplay/trainer.h"

namespace selfplay {

inline constexpr int kConfigVersion = 1;

// Invalid configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class OptimizerKind { kSgd, kRmsProp };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kSgd;
  double lr = 0.03;
  LrSchedule schedule = LrSchedule::kConstant;
  double max_grad_norm = 1.0;
  double alpha = 0.99;
};

struct TheoryModeConfig {
  TheoryConfig bounds;
  double grid_step = 0.05;
  bool exact = true;
  int max_iterations = 10000;
  std::optional<MixedStrategy> x0;  // default: seeded Dirichlet draw
  std::optional<MixedStrategy> y0;
};

struct ExperimentConfig {
  int version = kConfigVersion;
  std::string game;
  Method method = Method::kOurs;
  GradientMode mode = GradientMode::kPolicyGradient;
  PayoffOrientation orientation = PayoffOrientation::kTable;
  int n = 1;
  int N = 1;
  int l = 1;
  int64_t m_k = 1;
  int64_t eval_m_k = 0;  // 0: same as m_k
  OptimizerConfig optimizer;
  double gamma = 0.97;
  double lambda = 0.95;
  double entropy_coef = 0.01;
  SoccerConfig soccer;
  uint64_t seed = 0;
  int threads = 0;  // 0: all cores
  std::string output_dir = "runs/default";
  int checkpoint_every = 1;
  int64_t episode_budget = 0;
  bool reuse_eval_rollouts = false;
  bool theory_mode = false;
  TheoryModeConfig theory;

  bool is_matrix_game() const { return IsMatrixGameId(game); }
  int64_t evaluation_rollouts() const { return eval_m_k > 0 ? eval_m_k : m_k; }
  // Cross-field checks; throws ConfigError without a line number.
  void Validate() const;
};

// Parses and validates YAML text; throws ConfigError.
ExperimentConfig ParseExperimentConfig(const std::string& yaml_text);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// Canonical YAML rendering; parsing it yields an equal configuration.
std::string ExperimentConfigToYaml(const ExperimentConfig& config);

}  // namespace selfplay

#endif  // SELFPLAY_EXPERIMENT_CONFIG_H_
