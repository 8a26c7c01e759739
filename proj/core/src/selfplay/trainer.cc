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

#include "selfplay/selfplay/trainer.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "selfplay/common/parallel.h"

namespace selfplay {

ExactMatrixEvaluator::ExactMatrixEvaluator(
    std::shared_ptr<const MatrixGame> game)
    : game_(std::move(game)) {
  if (!game_) throw std::invalid_argument("ExactMatrixEvaluator: null game");
}

double ExactMatrixEvaluator::Payoff(const Policy& x, const Policy& y, int64_t,
                                    Rng&) const {
  return game_->Payoff(x.ActionDistribution(0), y.ActionDistribution(0));
}

double ExactMatrixEvaluator::Outcome(const Policy& x, const Policy& y, int64_t,
                                     Rng&) const {
  const std::vector<double> px = x.ActionDistribution(0);
  const std::vector<double> py = y.ActionDistribution(0);
  double total = 0.0;
  for (int a = 0; a < game_->rows(); ++a) {
    for (int b = 0; b < game_->cols(); ++b) {
      const double v = game_->at(a, b);
      total += px[a] * py[b] * static_cast<double>((v > 0) - (v < 0));
    }
  }
  return total;
}

MonteCarloEvaluator::MonteCarloEvaluator(std::shared_ptr<const Environment> env,
                                         double gamma)
    : env_(std::move(env)), gamma_(gamma) {
  if (!env_) throw std::invalid_argument("MonteCarloEvaluator: null env");
}

double MonteCarloEvaluator::Payoff(const Policy& x, const Policy& y, int64_t m,
                                   Rng& rng) const {
  if (m <= 0) throw std::invalid_argument("MonteCarloEvaluator: m must be > 0");
  double total = 0.0;
  for (int64_t i = 0; i < m; ++i) {
    total += env_->Rollout(x, y, rng, gamma_).DiscountedReturn();
  }
  return total / static_cast<double>(m);
}

double MonteCarloEvaluator::Outcome(const Policy& x, const Policy& y,
                                    int64_t m, Rng& rng) const {
  if (m <= 0) throw std::invalid_argument("MonteCarloEvaluator: m must be > 0");
  int64_t total = 0;
  for (int64_t i = 0; i < m; ++i) total += env_->Rollout(x, y, rng).Outcome();
  return static_cast<double>(total) / static_cast<double>(m);
}

Method ParseMethod(std::string_view name) {
  if (name == "ours") return Method::kOurs;
  if (name == "latest") return Method::kLatest;
  if (name == "best_past") return Method::kBestPast;
  if (name == "random_past") return Method::kRandomPast;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected ours, latest, best_past or "
                              "random_past)");
}

std::string_view MethodName(Method m) {
  switch (m) {
    case Method::kOurs: return "ours";
    case Method::kLatest: return "latest";
    case Method::kBestPast: return "best_past";
    case Method::kRandomPast: return "random_past";
  }
  return "?";
}

void TrainConfig::Validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (iterations < 1) throw std::invalid_argument("N must be >= 1");
  if (inner_updates < 1) throw std::invalid_argument("l must be >= 1");
  if (m_k < 1) throw std::invalid_argument("m_k must be >= 1");
  if (m_eval < 1) throw std::invalid_argument("eval_m_k must be >= 1");
  if (episode_budget < 0) {
    throw std::invalid_argument("episode_budget must be >= 0");
  }
}

std::vector<int> SelectOpponentsForX(
    const std::vector<std::vector<double>>& eval) {
  const std::size_t n = eval.size();
  std::vector<int> v(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      if (eval[i][j] > eval[i][v[i]]) v[i] = static_cast<int>(j);
    }
  }
  return v;
}

std::vector<int> SelectOpponentsForY(
    const std::vector<std::vector<double>>& eval) {
  const std::size_t n = eval.size();
  std::vector<int> u(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      if (eval[j][i] < eval[u[i]][i]) u[i] = static_cast<int>(j);
    }
  }
  return u;
}

namespace {

struct Seat {
  std::unique_ptr<Learner> x;
  std::unique_ptr<Learner> y;
};

AgentSnapshot Snapshot(const Seat& s, int iteration, int agent) {
  return AgentSnapshot{iteration, agent,
                       std::shared_ptr<const Policy>(s.x->policy().Clone()),
                       std::shared_ptr<const Policy>(s.y->policy().Clone())};
}

// Episodes one policy of agent i consumes in a single iteration.
int64_t EpisodesPerIteration(const TrainConfig& c, bool exact) {
  const int64_t updates = exact ? 0 : c.inner_updates * c.m_k;
  switch (c.method) {
    case Method::kOurs: return (exact ? 0 : c.n * c.m_eval) + updates;
    case Method::kBestPast: return updates + (exact ? 0 : c.m_k);
    default: return updates;
  }
}

}  // namespace

TrainResult Train(const TrainConfig& config, const LearnerFactory& factory,
                  const Evaluator& evaluator, const TrainCallbacks& callbacks) {
  config.Validate();
  if (!factory) throw std::invalid_argument("Train: null learner factory");
  if (callbacks.checkpoint_every < 1) {
    throw std::invalid_argument("checkpoint_every must be >= 1");
  }
  const int n = config.n;
  const uint64_t seed = config.seed;
  const bool exact = evaluator.exact();

  std::vector<Seat> seats(n);
  for (int i = 0; i < n; ++i) {
    Rng rx = Rng::Derive(seed, {Tag(StreamTag::kInit), uint64_t(i), 0});
    Rng ry = Rng::Derive(seed, {Tag(StreamTag::kInit), uint64_t(i), 1});
    seats[i].x = factory(Side::kX, i, rx);
    seats[i].y = factory(Side::kY, i, ry);
    if (!seats[i].x || !seats[i].y || seats[i].x->side() != Side::kX ||
        seats[i].y->side() != Side::kY) {
      throw std::logic_error("Train: factory returned a bad learner");
    }
  }

  TrainResult result;
  result.episodes_per_agent.assign(n, 0);
  for (int i = 0; i < n; ++i) result.initial.push_back(Snapshot(seats[i], 0, i));
  auto observe = [&](int k) {
    if (!callbacks.observe) return;
    for (int i = 0; i < n; ++i) {
      callbacks.observe(k, i, seats[i].x->policy(), seats[i].y->policy());
    }
  };
  observe(0);

  // Per-pair opponent history for the past-sampling baselines.
  std::vector<std::vector<AgentSnapshot>> history(n);
  std::vector<int> champion(n, 0);
  if (config.method == Method::kBestPast ||
      config.method == Method::kRandomPast) {
    for (int i = 0; i < n; ++i) history[i].push_back(result.initial[i]);
  }

  auto emit = [&](int k) {
    if (!callbacks.checkpoint) return;
    for (int i = 0; i < n; ++i) callbacks.checkpoint(Snapshot(seats[i], k, i));
  };

  const int64_t per_iteration = EpisodesPerIteration(config, exact);
  int k = 0;
  for (; k < config.iterations; ++k) {
    if (config.episode_budget > 0 &&
        result.episodes_per_agent[0] + per_iteration > config.episode_budget) {
      break;
    }
    if (k % callbacks.checkpoint_every == 0) emit(k);

    // Frozen iteration-k policies; all updates read only these.
    std::vector<AgentSnapshot> current(n);
    for (int i = 0; i < n; ++i) current[i] = Snapshot(seats[i], k, i);

    std::vector<int> opp_x(n), opp_y(n);
    std::vector<const Policy*> target_x(n), target_y(n);
    std::vector<double> e_hat(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> self_x(n, 0), self_y(n, 0);

    if (config.method == Method::kOurs) {
      std::vector<std::vector<double>> eval(n, std::vector<double>(n));
      ParallelFor(static_cast<std::size_t>(n) * n, config.threads,
                  [&](std::size_t idx) {
                    const int i = static_cast<int>(idx / n);
                    const int j = static_cast<int>(idx % n);
                    Rng rng = Rng::Derive(seed, {Tag(StreamTag::kEvaluate),
                                                 uint64_t(k), uint64_t(i),
                                                 uint64_t(j)});
                    eval[i][j] = evaluator.Payoff(*current[i].x, *current[j].y,
                                                  config.m_eval, rng);
                  });
      opp_x = SelectOpponentsForX(eval);
      opp_y = SelectOpponentsForY(eval);
      for (int i = 0; i < n; ++i) {
        target_x[i] = current[opp_x[i]].y.get();
        target_y[i] = current[opp_y[i]].x.get();
        e_hat[i] = eval[i][opp_x[i]] - eval[opp_y[i]][i];
        self_x[i] = opp_x[i] == i;
        self_y[i] = opp_y[i] == i;
      }
      result.evaluations.push_back(std::move(eval));
    } else {
      for (int i = 0; i < n; ++i) {
        switch (config.method) {
          case Method::kLatest:
            opp_x[i] = opp_y[i] = k;
            target_x[i] = current[i].y.get();
            target_y[i] = current[i].x.get();
            break;
          case Method::kBestPast:
            opp_x[i] = opp_y[i] = champion[i];
            target_x[i] = history[i][champion[i]].y.get();
            target_y[i] = history[i][champion[i]].x.get();
            break;
          case Method::kRandomPast: {
            const int size = static_cast<int>(history[i].size());
            Rng px = Rng::Derive(seed, {Tag(StreamTag::kOpponentPick),
                                        uint64_t(k), uint64_t(i), 0});
            Rng py = Rng::Derive(seed, {Tag(StreamTag::kOpponentPick),
                                        uint64_t(k), uint64_t(i), 1});
            opp_x[i] = px.UniformInt(size);
            opp_y[i] = py.UniformInt(size);
            target_x[i] = history[i][opp_x[i]].y.get();
            target_y[i] = history[i][opp_y[i]].x.get();
            break;
          }
          case Method::kOurs:
            break;
        }
        self_x[i] = opp_x[i] == k;
        self_y[i] = opp_y[i] == k;
      }
    }

    ParallelFor(static_cast<std::size_t>(2 * n), config.threads,
                [&](std::size_t idx) {
                  const int i = static_cast<int>(idx / 2);
                  const bool is_x = idx % 2 == 0;
                  const StreamTag tag =
                      is_x ? StreamTag::kUpdateX : StreamTag::kUpdateY;
                  Rng rng = Rng::Derive(seed, {Tag(tag), uint64_t(k),
                                               uint64_t(i)});
                  Learner& learner = is_x ? *seats[i].x : *seats[i].y;
                  learner.Update(is_x ? *target_x[i] : *target_y[i], k,
                                 config.inner_updates, config.m_k, rng);
                });

    if (config.method == Method::kBestPast ||
        config.method == Method::kRandomPast) {
      for (int i = 0; i < n; ++i) history[i].push_back(Snapshot(seats[i], k + 1, i));
    }
    if (config.method == Method::kBestPast) {
      std::vector<double> score(n);
      ParallelFor(static_cast<std::size_t>(n), config.threads,
                  [&](std::size_t idx) {
                    const int i = static_cast<int>(idx);
                    const AgentSnapshot& champ = history[i][champion[i]];
                    const AgentSnapshot& fresh = history[i].back();
                    Rng rng = Rng::Derive(seed, {Tag(StreamTag::kChampion),
                                                 uint64_t(k), uint64_t(i)});
                    // Challenger wins as y against the champion's x, and as
                    // x when the outcome is negative.
                    const double as_y =
                        evaluator.Outcome(*champ.x, *fresh.y, config.m_k, rng);
                    const double as_x =
                        evaluator.Outcome(*fresh.x, *champ.y, config.m_k, rng);
                    score[i] = 0.5 + 0.25 * (as_y - as_x);
                  });
      for (int i = 0; i < n; ++i) {
        if (score[i] > 0.5) {
          const int next = static_cast<int>(history[i].size()) - 1;
          result.champion_events.push_back(
              ChampionEvent{k, i, champion[i], next, score[i]});
          champion[i] = next;
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      result.episodes_per_agent[i] += per_iteration;
      IterationMetrics row;
      row.iteration = k;
      row.agent = i;
      row.episodes_per_agent = result.episodes_per_agent[i];
      row.e_hat = e_hat[i];
      row.opponent_v = opp_x[i];
      row.opponent_u = opp_y[i];
      row.self_selected_x = self_x[i];
      row.self_selected_y = self_y[i];
      if (callbacks.distance) {
        row.distance_to_nash =
            callbacks.distance(seats[i].x->policy(), seats[i].y->policy());
      }
      result.metrics.push_back(row);
    }
    observe(k + 1);
  }
  result.iterations_completed = k;
  emit(k);
  for (int i = 0; i < n; ++i) result.final.push_back(Snapshot(seats[i], k, i));
  return result;
}

}  // namespace selfplay
