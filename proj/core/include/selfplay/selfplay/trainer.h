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

#ifndef SELFPLAY_SELFPLAY_TRAINER_H_
#define SELFPLAY_SELFPLAY_TRAINER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfplay/common/rng.h"
#include "selfplay/estimators/estimators.h"
#include "selfplay/games/environment.h"
#include "selfplay/games/matrix_game.h"
#include "selfplay/selfplay/learner.h"

namespace selfplay {

// Estimates f(x, y) between two frozen policies.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual bool exact() const = 0;
  // Mean Player-2 return over `m` rollouts (ignored when exact).
  virtual double Payoff(const Policy& x, const Policy& y, int64_t m,
                        Rng& rng) const = 0;
  // P(y wins) - P(x wins), from the sign of each episode's summed reward.
  virtual double Outcome(const Policy& x, const Policy& y, int64_t m,
                         Rng& rng) const = 0;
};

class ExactMatrixEvaluator final : public Evaluator {
 public:
  explicit ExactMatrixEvaluator(std::shared_ptr<const MatrixGame> game);
  bool exact() const override { return true; }
  double Payoff(const Policy& x, const Policy& y, int64_t m,
                Rng& rng) const override;
  double Outcome(const Policy& x, const Policy& y, int64_t m,
                 Rng& rng) const override;

 private:
  std::shared_ptr<const MatrixGame> game_;
};

class MonteCarloEvaluator final : public Evaluator {
 public:
  MonteCarloEvaluator(std::shared_ptr<const Environment> env, double gamma);
  bool exact() const override { return false; }
  double Payoff(const Policy& x, const Policy& y, int64_t m,
                Rng& rng) const override;
  double Outcome(const Policy& x, const Policy& y, int64_t m,
                 Rng& rng) const override;

 private:
  std::shared_ptr<const Environment> env_;
  double gamma_;
};

enum class Method { kOurs, kLatest, kBestPast, kRandomPast };

Method ParseMethod(std::string_view name);
std::string_view MethodName(Method m);

// Builds the initial learner of one seat; `rng` is the seat's init stream.
using LearnerFactory =
    std::function<std::unique_ptr<Learner>(Side side, int agent, Rng& rng)>;

// Squared distance of (x, y) to the equilibrium set, when known.
using DistanceFn =
    std::function<std::optional<double>(const Policy& x, const Policy& y)>;

struct TrainConfig {
  Method method = Method::kOurs;
  int n = 4;            // population size (independent pairs for baselines)
  int iterations = 1;   // N
  int inner_updates = 1;  // l
  int64_t m_k = 1;      // rollouts per inner update
  int64_t m_eval = 1;   // rollouts per evaluation entry
  uint64_t seed = 0;
  int threads = 1;
  // Stop before an iteration that would push any agent past this many
  // episodes; 0 disables the cap.
  int64_t episode_budget = 0;

  void Validate() const;
};

struct IterationMetrics {
  int iteration = 0;
  int agent = 0;
  int64_t episodes_per_agent = 0;
  // NaN for baselines, which do not evaluate a population.
  double e_hat = 0.0;
  int opponent_v = 0;  // opponent index of x (agent or history slot)
  int opponent_u = 0;  // opponent index of y
  bool self_selected_x = false;
  bool self_selected_y = false;
  std::optional<double> distance_to_nash;
};

struct ChampionEvent {
  int iteration = 0;
  int agent = 0;
  int previous = 0;
  int replacement = 0;
  double score = 0.0;  // challenger's score against the old champion
};

// Frozen copy of one agent at the start of an iteration.
struct AgentSnapshot {
  int iteration = 0;
  int agent = 0;
  std::shared_ptr<const Policy> x;
  std::shared_ptr<const Policy> y;
};

struct TrainCallbacks {
  DistanceFn distance;
  // Called for every agent at iterations 0, every, 2 every, ... and after
  // the last iteration.
  std::function<void(const AgentSnapshot&)> checkpoint;
  int checkpoint_every = 1;
  // Called with the live policies of every agent at the start (k = 0) and
  // after each completed iteration (k + 1).
  std::function<void(int k, int agent, const Policy& x, const Policy& y)>
      observe;
};

struct TrainResult {
  std::vector<IterationMetrics> metrics;
  std::vector<ChampionEvent> champion_events;
  std::vector<AgentSnapshot> initial;
  std::vector<AgentSnapshot> final;
  // eval[k] is the n x n matrix used at iteration k (Ours only).
  std::vector<std::vector<std::vector<double>>> evaluations;
  std::vector<int64_t> episodes_per_agent;
  int iterations_completed = 0;
};

// Population self-play for Method::kOurs, otherwise the naive baselines on
// `n` independent pairs. Agent i of every method draws initial parameters and
// update randomness from the same streams, so n = 1 Ours and the latest
// baseline follow the same trajectory.
TrainResult Train(const TrainConfig& config, const LearnerFactory& factory,
                  const Evaluator& evaluator,
                  const TrainCallbacks& callbacks = {});

// Greedy opponent picks: v_i = argmax_j eval[i][j], u_i = argmin_j
// eval[j][i], ties to the lowest index.
std::vector<int> SelectOpponentsForX(
    const std::vector<std::vector<double>>& eval);
std::vector<int> SelectOpponentsForY(
    const std::vector<std::vector<double>>& eval);

}  // namespace selfplay

#endif  // SELFPLAY_SELFPLAY_TRAINER_H_
