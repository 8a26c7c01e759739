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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "selfplay/evaluation/nash.h"
#include "selfplay/games/registry.h"
#include "selfplay/games/soccer.h"
#include "selfplay/selfplay/checkpoint.h"
#include "selfplay/selfplay/learner.h"
#include "selfplay/selfplay/theory.h"
#include "selfplay/selfplay/trainer.h"

namespace selfplay {
namespace {

std::vector<double> Probs(const Policy& p) {
  return static_cast<const SimplexPolicy&>(p).probabilities();
}

LearnerFactory MatrixFactory(std::shared_ptr<const MatrixGame> game,
                             GradientMode mode, double lr = 0.03) {
  return [game, mode, lr](Side side, int, Rng& rng) {
    const int dim = game->num_actions(side);
    SimplexLearnerOptions opt;
    opt.mode = mode;
    opt.lr = lr;
    return std::make_unique<SimplexLearner>(
        game, side, SimplexPolicy::RandomDirichlet(dim, rng), opt);
  };
}

TEST(OpponentSelection, ArgmaxArgminWithLowestIndexTies) {
  const std::vector<std::vector<double>> eval = {
      {0.1, 0.5, 0.5}, {0.3, 0.2, 0.0}, {-1.0, 0.4, 0.2}};
  EXPECT_EQ(SelectOpponentsForX(eval), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(SelectOpponentsForY(eval), (std::vector<int>{2, 1, 1}));
  const std::vector<std::vector<double>> flat(2, std::vector<double>(2, 0.0));
  EXPECT_EQ(SelectOpponentsForX(flat), (std::vector<int>{0, 0}));
  EXPECT_EQ(SelectOpponentsForY(flat), (std::vector<int>{0, 0}));
}

TEST(Train, SinglePopulationEqualsLatest) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  ExactMatrixEvaluator eval(game);
  TrainConfig cfg;
  cfg.n = 1;
  cfg.iterations = 50;
  cfg.seed = 3;
  cfg.method = Method::kOurs;
  const TrainResult ours =
      Train(cfg, MatrixFactory(game, GradientMode::kExact), eval);
  cfg.method = Method::kLatest;
  const TrainResult latest =
      Train(cfg, MatrixFactory(game, GradientMode::kExact), eval);
  EXPECT_EQ(Probs(*ours.final[0].x), Probs(*latest.final[0].x));
  EXPECT_EQ(Probs(*ours.final[0].y), Probs(*latest.final[0].y));
  for (const auto& m : ours.metrics) {
    EXPECT_TRUE(m.self_selected_x);
    EXPECT_TRUE(m.self_selected_y);
    EXPECT_EQ(m.e_hat, 0.0);
  }
}

TEST(Train, EpisodeAccounting) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  MonteCarloEvaluator eval(game, 1.0);
  TrainConfig cfg;
  cfg.n = 2;
  cfg.iterations = 3;
  cfg.inner_updates = 2;
  cfg.m_k = 8;
  cfg.m_eval = 4;
  const std::map<Method, int64_t> want = {{Method::kOurs, 3 * (2 * 4 + 2 * 8)},
                                          {Method::kLatest, 3 * 16},
                                          {Method::kBestPast, 3 * (16 + 8)},
                                          {Method::kRandomPast, 3 * 16}};
  for (const auto& [method, episodes] : want) {
    cfg.method = method;
    const TrainResult r =
        Train(cfg, MatrixFactory(game, GradientMode::kPolicyGradient), eval);
    EXPECT_EQ(r.episodes_per_agent, (std::vector<int64_t>{episodes, episodes}))
        << MethodName(method);
    EXPECT_EQ(r.metrics.back().episodes_per_agent, episodes);
  }
}

TEST(Train, BudgetStopsBeforeOverrun) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  MonteCarloEvaluator eval(game, 1.0);
  TrainConfig cfg;
  cfg.n = 2;
  cfg.iterations = 100;
  cfg.m_k = 100;
  cfg.m_eval = 100;
  cfg.episode_budget = 1000;  // 300 per iteration
  const TrainResult r =
      Train(cfg, MatrixFactory(game, GradientMode::kPolicyGradient), eval);
  EXPECT_EQ(r.iterations_completed, 3);
  EXPECT_EQ(r.episodes_per_agent[0], 900);
  EXPECT_EQ(r.metrics.size(), 6u);
}

TEST(Train, ExactModePlaysNoEpisodes) {
  auto game = std::make_shared<MatrixGame>(RockPaperScissors());
  ExactMatrixEvaluator eval(game);
  TrainConfig cfg;
  cfg.n = 3;
  cfg.iterations = 4;
  const TrainResult r =
      Train(cfg, MatrixFactory(game, GradientMode::kExact), eval);
  EXPECT_EQ(r.episodes_per_agent, (std::vector<int64_t>{0, 0, 0}));
}

// f(x_i, v_i) >= f(x_i, y_i) >= f(u_i, y_i): the population contains the
// agent itself, so E_hat is non-negative and bounded by the duality gap.
TEST(Train, PerturbationInequalityAndGapBound) {
  auto game = std::make_shared<MatrixGame>(SkewedMatchingPennies());
  ExactMatrixEvaluator eval(game);
  TrainConfig cfg;
  cfg.n = 4;
  cfg.iterations = 60;
  cfg.seed = 11;
  std::map<std::pair<int, int>, std::pair<std::vector<double>,
                                          std::vector<double>>> seen;
  TrainCallbacks cb;
  cb.observe = [&](int k, int i, const Policy& x, const Policy& y) {
    seen[{k, i}] = {Probs(x), Probs(y)};
  };
  const TrainResult r =
      Train(cfg, MatrixFactory(game, GradientMode::kExact), eval, cb);
  ASSERT_EQ(r.evaluations.size(), 60u);
  for (const auto& m : r.metrics) {
    const auto& e = r.evaluations[m.iteration];
    const int i = m.agent;
    EXPECT_GE(e[i][m.opponent_v], e[i][i]);
    EXPECT_LE(e[m.opponent_u][i], e[i][i]);
    EXPECT_GE(m.e_hat, 0.0);
    const auto& [x, y] = seen.at({m.iteration, i});
    EXPECT_NEAR(e[i][i], game->Payoff(x, y), 1e-15);
    EXPECT_GE(DualityGap(*game, x, y) + 1e-12, m.e_hat);
  }
}

TEST(Train, DeterministicAcrossRunsAndThreads) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  MonteCarloEvaluator eval(game, 1.0);
  TrainConfig cfg;
  cfg.n = 3;
  cfg.iterations = 10;
  cfg.m_k = 16;
  cfg.m_eval = 16;
  cfg.seed = 5;
  auto run = [&](int threads) {
    cfg.threads = threads;
    const TrainResult r =
        Train(cfg, MatrixFactory(game, GradientMode::kPolicyGradient), eval);
    std::vector<double> flat;
    for (const auto& s : r.final) {
      for (double v : Probs(*s.x)) flat.push_back(v);
      for (double v : Probs(*s.y)) flat.push_back(v);
    }
    for (const auto& m : r.metrics) flat.push_back(m.e_hat);
    return flat;
  };
  const auto a = run(1);
  EXPECT_EQ(a, run(1));
  EXPECT_EQ(a, run(3));
}

TEST(Train, RandomPastStartsFromInitialSnapshot) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  ExactMatrixEvaluator eval(game);
  TrainConfig cfg;
  cfg.method = Method::kRandomPast;
  cfg.n = 2;
  cfg.iterations = 30;
  const TrainResult r =
      Train(cfg, MatrixFactory(game, GradientMode::kExact), eval);
  for (const auto& m : r.metrics) {
    if (m.iteration == 0) {
      EXPECT_EQ(m.opponent_v, 0);
      EXPECT_EQ(m.opponent_u, 0);
    }
    EXPECT_LE(m.opponent_v, m.iteration);
    EXPECT_LE(m.opponent_u, m.iteration);
    EXPECT_TRUE(std::isnan(m.e_hat));
  }
}

TEST(Train, BestPastReplacesOnlyOnWinningScore) {
  auto game = std::make_shared<MatrixGame>(SkewedMatchingPennies());
  MonteCarloEvaluator eval(game, 1.0);
  TrainConfig cfg;
  cfg.method = Method::kBestPast;
  cfg.n = 2;
  cfg.iterations = 40;
  cfg.m_k = 32;
  cfg.seed = 8;
  const TrainResult r =
      Train(cfg, MatrixFactory(game, GradientMode::kPolicyGradient, 0.1), eval);
  ASSERT_FALSE(r.champion_events.empty());
  std::vector<int> champ(cfg.n, 0);
  for (const auto& e : r.champion_events) {
    EXPECT_GT(e.score, 0.5);
    EXPECT_EQ(e.previous, champ[e.agent]);
    EXPECT_EQ(e.replacement, e.iteration + 1);
    champ[e.agent] = e.replacement;
  }
}

TEST(Train, CheckpointCadence) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  ExactMatrixEvaluator eval(game);
  TrainConfig cfg;
  cfg.n = 2;
  cfg.iterations = 7;
  std::vector<int> ks;
  TrainCallbacks cb;
  cb.checkpoint_every = 3;
  cb.checkpoint = [&](const AgentSnapshot& s) {
    if (s.agent == 0) ks.push_back(s.iteration);
  };
  Train(cfg, MatrixFactory(game, GradientMode::kExact), eval, cb);
  EXPECT_EQ(ks, (std::vector<int>{0, 3, 6, 7}));
}

TEST(Train, RejectsBadConfig) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  ExactMatrixEvaluator eval(game);
  TrainConfig cfg;
  cfg.n = 0;
  EXPECT_THROW(Train(cfg, MatrixFactory(game, GradientMode::kExact), eval),
               std::invalid_argument);
  EXPECT_THROW(ParseMethod("newest"), std::invalid_argument);
  EXPECT_EQ(ParseMethod("best_past"), Method::kBestPast);
}

// Block maxima of each agent's distance to the equilibrium set shrink until
// they reach a small plateau, where jitter between blocks is expected.
TEST(Train, ExactGradientDistanceBlockMaxDecreases) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  ExactMatrixEvaluator eval(game);
  const EquilibriumSet eq(*game);
  TrainConfig cfg;
  cfg.n = 4;
  cfg.iterations = 1000;
  cfg.seed = 1;
  TrainCallbacks cb;
  cb.distance = [&](const Policy& x, const Policy& y) -> std::optional<double> {
    return std::sqrt(eq.SquaredDistance(Probs(x), Probs(y)));
  };
  const TrainResult r =
      Train(cfg, MatrixFactory(game, GradientMode::kExact), eval, cb);
  for (int i = 0; i < cfg.n; ++i) {
    std::vector<double> block_max(10, 0.0);
    for (const auto& m : r.metrics) {
      if (m.agent != i) continue;
      double& b = block_max[m.iteration / 100];
      b = std::max(b, *m.distance_to_nash);
    }
    for (int b = 1; b < 10; ++b) {
      if (block_max[b - 1] > 0.05) EXPECT_LE(block_max[b], block_max[b - 1]) << i;
    }
    EXPECT_LE(block_max.back(), 0.1 * block_max.front()) << i;
    EXPECT_LT(block_max.back(), 0.05);
  }
}

TEST(CheckpointTest, RoundTripAndCorruption) {
  const SimplexPolicy x({0.25, 0.75});
  const SimplexPolicy y({0.6, 0.4});
  const Checkpoint c = MakeCheckpoint(x, y, "matching_pennies", "ours", 12, 3, 99);
  const std::string bytes = SerializeCheckpoint(c);
  EXPECT_EQ(DeserializeCheckpoint(bytes), c);
  EXPECT_EQ(Probs(*PolicyFromCheckpoint(c, Side::kX)), x.probabilities());
  EXPECT_EQ(Probs(*PolicyFromCheckpoint(c, Side::kY)), y.probabilities());

  EXPECT_THROW(DeserializeCheckpoint(bytes.substr(0, bytes.size() - 3)),
               std::runtime_error);
  EXPECT_THROW(DeserializeCheckpoint(bytes + "x"), std::runtime_error);
  std::string bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(DeserializeCheckpoint(bad), std::runtime_error);
  EXPECT_THROW(DeserializeCheckpoint(""), std::runtime_error);

  const auto path = std::filesystem::temp_directory_path() / "selfplay_ckpt_test.ckpt";
  SaveCheckpoint(c, path);
  EXPECT_EQ(LoadCheckpoint(path), c);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadCheckpoint(path), std::runtime_error);
}

TEST(CheckpointTest, TabularPolicyRoundTrip) {
  auto env = MakeEnvironment("soccer");
  A2CLearner lx(env, Side::kX, {});
  A2CLearner ly(env, Side::kY, {});
  Rng rng(3);
  lx.Update(ly.policy(), 0, 2, 4, rng);
  const Checkpoint c = MakeCheckpoint(lx.policy(), ly.policy(), "soccer", "latest",
                                      1, 0, 1);
  EXPECT_EQ(c.kind, PolicyKind::kTabularSoftmax);
  const Checkpoint back = DeserializeCheckpoint(SerializeCheckpoint(c));
  EXPECT_EQ(back, c);
  const auto p = PolicyFromCheckpoint(back, Side::kX);
  std::vector<double> a(soccer::kNumActions), b(soccer::kNumActions);
  for (int o = 0; o < soccer::kNumObservations; o += 37) {
    p->Distribution(o, a);
    lx.policy().Distribution(o, b);
    EXPECT_EQ(a, b);
  }
}

TheoryRunConfig MpTheory(double step, double eps) {
  TheoryRunConfig cfg;
  cfg.theory.epsilon = eps;
  cfg.theory.d = 2;
  cfg.candidates_x = SimplexGrid(2, step);
  cfg.candidates_y = SimplexGrid(2, step);
  return cfg;
}

TEST(Theory, GridHasExpectedPoints) {
  const auto g = SimplexGrid(3, 0.5);
  EXPECT_EQ(g.size(), 6u);
  for (const auto& p : g) CheckSimplex(p, 3, 1e-12);
  EXPECT_EQ(SimplexGrid(2, 0.05).size(), 21u);
  EXPECT_THROW(SimplexGrid(2, 0.3), std::invalid_argument);
}

TEST(Theory, StopsImmediatelyAtEquilibrium) {
  TheoryRunConfig cfg = MpTheory(0.05, 0.02);
  cfg.x0 = {0.5, 0.5};
  cfg.y0 = {0.5, 0.5};
  const TheoryResult r = TrainSingleTheory(MatchingPennies(), cfg);
  EXPECT_TRUE(r.stopped);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].e_hat, 0.0);
  EXPECT_TRUE(r.records[0].gx.empty());
}

TEST(Theory, CertifiesSmallGapOnPennies) {
  TheoryRunConfig cfg = MpTheory(0.05, 0.02);
  cfg.x0 = {0.9, 0.1};
  cfg.y0 = {0.2, 0.8};
  const MatrixGame g = MatchingPennies();
  const TheoryResult r = TrainSingleTheory(g, cfg);
  ASSERT_TRUE(r.stopped);
  EXPECT_LE(r.records.back().e_hat, 3 * 0.02);
  // Pure strategies lie on the grid, so the grid gap is the true gap.
  EXPECT_LE(DualityGap(g, r.x, r.y), 3 * 0.02 + 1e-12);
  for (const auto& rec : r.records) {
    EXPECT_GE(rec.f_xv, rec.f_xy - 1e-15);
    EXPECT_LE(rec.f_uy, rec.f_xy + 1e-15);
    EXPECT_EQ(rec.m_k, 0);
  }
}

TEST(Theory, RejectsBadCandidates) {
  TheoryRunConfig cfg = MpTheory(0.5, 0.02);
  cfg.x0 = {0.5, 0.5};
  cfg.y0 = {0.5, 0.5};
  cfg.candidates_y = {{0.2, 0.2, 0.6}};
  EXPECT_THROW(TrainSingleTheory(MatchingPennies(), cfg), std::invalid_argument);
}

TEST(Learner, SimplexExactStepMatchesHandComputation) {
  auto game = std::make_shared<MatrixGame>(MatchingPennies());
  SimplexLearnerOptions opt;
  opt.lr = 0.1;
  SimplexLearner lx(game, Side::kX, SimplexPolicy({0.5, 0.5}), opt);
  SimplexLearner ly(game, Side::kY, SimplexPolicy({0.5, 0.5}), opt);
  const SimplexPolicy opp({1.0, 0.0});
  Rng rng(0);
  EXPECT_EQ(lx.Update(opp, 0, 1, 1, rng), 0);
  ly.Update(opp, 0, 1, 1, rng);
  // grad_x = M y = (M00, M10); x descends, y ascends along M^T x.
  const double m00 = game->at(0, 0), m10 = game->at(1, 0), m01 = game->at(0, 1);
  const auto px = ProjectSimplex(std::vector<double>{0.5 - 0.1 * m00, 0.5 - 0.1 * m10});
  const auto py = ProjectSimplex(std::vector<double>{0.5 + 0.1 * m00, 0.5 + 0.1 * m01});
  EXPECT_EQ(lx.simplex().probabilities(), px);
  EXPECT_EQ(ly.simplex().probabilities(), py);
}

TEST(Learner, A2CImprovesAgainstRulePolicy) {
  auto env = MakeEnvironment("soccer");
  const SoccerRulePolicy rule(Side::kX);
  A2CLearner learner(env, Side::kY, {});
  auto score = [&](uint64_t seed) {
    Rng rng(seed);
    double s = 0.0;
    for (int i = 0; i < 2000; ++i) {
      s += env->Rollout(rule, learner.policy(), rng).Outcome();
    }
    return s / 2000;
  };
  const double before = score(100);
  Rng rng(7);
  for (int k = 0; k < 200; ++k) learner.Update(rule, k, 1, 16, rng);
  const double after = score(100);
  EXPECT_GT(after, before);
}

}  // namespace
}  // namespace selfplay
