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

#ifndef SELFPLAY_EXPERIMENT_RUNNER_H_
#define SELFPLAY_EXPERIMENT_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfplay/experiment/config.h"
#include "selfplay/selfplay/theory.h"
#include "selfplay/selfplay/trainer.h"

namespace selfplay {

// Everything Train() needs for one configuration.
struct TrainingSetup {
  std::shared_ptr<const Environment> env;
  std::shared_ptr<const MatrixGame> matrix;  // null for soccer
  LearnerFactory factory;
  std::unique_ptr<Evaluator> evaluator;
  TrainConfig train;
  DistanceFn distance;  // empty for soccer
};

TrainingSetup MakeTrainingSetup(const ExperimentConfig& config);

struct RunOverrides {
  std::optional<uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<int> threads;
};

struct RunSummary {
  std::filesystem::path output_dir;
  TrainResult train;                  // empty in theory mode
  std::optional<TheoryResult> theory;
  std::vector<std::filesystem::path> final_checkpoints;
};

// Runs one experiment and writes metrics.csv, phase.csv (matrix games),
// checkpoints/ and run_manifest.json under the output directory; theory
// mode writes theory.csv instead of metrics and checkpoints. On failure the
// manifest records the error and the exception is rethrown.
RunSummary RunExperiment(ExperimentConfig config,
                         const RunOverrides& overrides = {});

// Shortest round-trip decimal form, locale independent; "nan"/"inf" for
// non-finite values.
std::string FormatDouble(double v);

// SHA-1 of "blob <size>\0<bytes>", lowercase hex, as git hashes objects.
std::string GitBlobHash(std::string_view bytes);

// Column order of metrics.csv.
inline constexpr std::string_view kMetricsHeader =
    "k,agent,episodes_per_agent,E_hat,opponent_v,opponent_u,"
    "self_selected_x,self_selected_y,distance_to_nash";

std::string MetricsToCsv(const std::vector<IterationMetrics>& metrics);

// Per-iteration aggregates over every agent of every run directory:
// k, rows, mean/CI of distance_to_nash, mean E_hat, self-selection rate.
std::string ExportCurves(const std::vector<std::filesystem::path>& run_dirs);

}  // namespace selfplay

#endif  // SELFPLAY_EXPERIMENT_RUNNER_H_
