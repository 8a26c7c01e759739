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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "selfplay/evaluation/nash.h"
#include "selfplay/evaluation/tournament.h"
#include "selfplay/games/matrix_game.h"
#include "selfplay/games/registry.h"
#include "selfplay/games/soccer.h"
#include "selfplay/policies/simplex_policy.h"

namespace selfplay {
namespace {

using V = std::vector<double>;

using soccer::Cell;

std::vector<double> RandomSimplex(int dim, Rng& rng) {
  return SimplexPolicy::RandomDirichlet(dim, rng).probabilities();
}

TEST(MatrixGame, BuiltinsTranscribeTables) {
  const MatrixGame mp = MatchingPennies();
  EXPECT_EQ(mp.at(0, 0), -1);
  EXPECT_EQ(mp.at(0, 1), 1);
  EXPECT_EQ(mp.at(1, 0), 1);
  EXPECT_EQ(mp.at(1, 1), -1);
  const MatrixGame smp = SkewedMatchingPennies();
  EXPECT_EQ(smp.at(0, 0), -2);
  EXPECT_EQ(smp.at(0, 1), 0);
  EXPECT_EQ(smp.at(1, 0), 1);
  EXPECT_EQ(smp.at(1, 1), -2);
  const MatrixGame rps = RockPaperScissors();
  const double want[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) EXPECT_EQ(rps.at(a, b), want[a][b]);
  }
  const MatrixGame emp = ExtendedMatchingPennies();
  ASSERT_EQ(emp.rows(), 2);
  ASSERT_EQ(emp.cols(), 3);
  EXPECT_EQ(emp.at(0, 2), -0.5);
  EXPECT_EQ(emp.at(1, 2), 0.5);
}

TEST(MatrixGame, PayoffAtEquilibria) {
  EXPECT_EQ(MatchingPennies().Payoff(V{0.5, 0.5}, V{0.5, 0.5}), 0.0);
  EXPECT_NEAR(SkewedMatchingPennies().Payoff(V{0.6, 0.4}, V{0.4, 0.6}), -0.8,
              1e-15);
}

TEST(MatrixGame, PureColumnPicksColumn) {
  Rng rng(1);
  const MatrixGame g = RockPaperScissors();
  const auto x = RandomSimplex(3, rng);
  for (int b = 0; b < 3; ++b) {
    std::vector<double> e(3, 0.0);
    e[b] = 1.0;
    double col = 0.0;
    for (int a = 0; a < 3; ++a) col += x[a] * g.at(a, b);
    EXPECT_NEAR(g.Payoff(x, e), col, 1e-15);
  }
}

TEST(MatrixGame, DimensionMismatchThrows) {
  const MatrixGame g = MatchingPennies();
  EXPECT_THROW(g.Payoff(V{1.0 / 3, 1.0 / 3, 1.0 / 3}, V{0.5, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(g.Payoff(V{0.5, 0.5}, V{1.0}), std::invalid_argument);
  EXPECT_THROW(MatrixGame("bad", {{1, 2}, {3}}), std::invalid_argument);
}

TEST(MatrixGame, Bilinearity) {
  Rng rng(2);
  for (const MatrixGame& g : {MatchingPennies(), SkewedMatchingPennies(),
                              RockPaperScissors(), ExtendedMatchingPennies()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x1 = RandomSimplex(g.rows(), rng);
      const auto x2 = RandomSimplex(g.rows(), rng);
      const auto y1 = RandomSimplex(g.cols(), rng);
      const auto y2 = RandomSimplex(g.cols(), rng);
      const double t = rng.Uniform();
      std::vector<double> xm(g.rows()), ym(g.cols());
      for (int a = 0; a < g.rows(); ++a) xm[a] = t * x1[a] + (1 - t) * x2[a];
      for (int b = 0; b < g.cols(); ++b) ym[b] = t * y1[b] + (1 - t) * y2[b];
      EXPECT_NEAR(g.Payoff(xm, y1),
                  t * g.Payoff(x1, y1) + (1 - t) * g.Payoff(x2, y1), 1e-12);
      EXPECT_NEAR(g.Payoff(x1, ym),
                  t * g.Payoff(x1, y1) + (1 - t) * g.Payoff(x1, y2), 1e-12);
    }
  }
}

TEST(MatrixGame, PureSampleIsDeterministic) {
  Rng rng(3);
  const MatrixSample s = MatchingPennies().Sample(V{1, 0}, V{0, 1}, rng);
  EXPECT_EQ(s.a, 0);
  EXPECT_EQ(s.b, 1);
  EXPECT_EQ(s.r, 1.0);
}

TEST(MatrixGame, SampleMeanMatchesPayoff) {
  Rng rng(4);
  const MatrixGame g = MatchingPennies();
  const int m = 100000;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += g.Sample(V{0.5, 0.5}, V{0.5, 0.5}, rng).r;
  // Rewards lie in [-1, 1]: 3 sigma of the mean is 3 / sqrt(m).
  EXPECT_NEAR(sum / m, 0.0, 3.0 / std::sqrt(double(m)));
}

TEST(MatrixGame, SampleSameSeedSameDraw) {
  const MatrixGame g = RockPaperScissors();
  const std::vector<double> x = {0.2, 0.3, 0.5}, y = {0.6, 0.1, 0.3};
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) {
    const auto sa = g.Sample(x, y, a);
    const auto sb = g.Sample(x, y, b);
    ASSERT_EQ(sa.a, sb.a);
    ASSERT_EQ(sa.b, sb.b);
    ASSERT_EQ(sa.r, sb.r);
  }
}

TEST(MatrixGame, RolloutHasOneStep) {
  Rng rng(5);
  const MatrixGame g = SkewedMatchingPennies();
  const SimplexPolicy x({0.3, 0.7}), y({0.5, 0.5});
  const Trajectory t = g.Rollout(x, y, rng);
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.steps[0].reward, g.at(t.steps[0].action_x, t.steps[0].action_y));
}

TEST(MatrixGame, SaddleOnGrid) {
  for (const MatrixGame& g : {MatchingPennies(), SkewedMatchingPennies(),
                              RockPaperScissors(), ExtendedMatchingPennies()}) {
    const NashSolution s = SolveNash(g);
    const double v = g.Payoff(s.x, s.y);
    auto check_grid = [&](int dim, auto&& fn) {
      const int steps = 100;
      if (dim == 2) {
        for (int i = 0; i <= steps; ++i) fn(std::vector<double>{i / 100.0, 1 - i / 100.0});
      } else {
        for (int i = 0; i <= steps; ++i) {
          for (int j = 0; i + j <= steps; ++j) {
            fn(std::vector<double>{i / 100.0, j / 100.0, (steps - i - j) / 100.0});
          }
        }
      }
    };
    check_grid(g.cols(), [&](const std::vector<double>& y) {
      EXPECT_LE(g.Payoff(s.x, y), v + 1e-12) << g.name();
    });
    check_grid(g.rows(), [&](const std::vector<double>& x) {
      EXPECT_GE(g.Payoff(x, s.y), v - 1e-12) << g.name();
    });
  }
}

TEST(Registry, KnownIdsAndOrientation) {
  for (const auto& id : EnvironmentIds()) {
    EXPECT_EQ(MakeEnvironment(id)->id(), id);
  }
  EXPECT_TRUE(IsMatrixGameId("rps"));
  EXPECT_FALSE(IsMatrixGameId("soccer"));
  EXPECT_THROW(MakeEnvironment("chess"), std::invalid_argument);
  const MatrixGame flipped =
      MakeMatrixGame("matching_pennies", PayoffOrientation::kCaption);
  EXPECT_EQ(flipped.at(0, 0), 1.0);
  EXPECT_EQ(flipped.at(0, 1), -1.0);
}

TEST(Soccer, ObservationEncodingRoundTrips) {
  EXPECT_EQ(soccer::kNumObservations, 5832);
  for (int obs = 0; obs < soccer::kNumObservations; obs += 7) {
    const SoccerState s = DecodeObservation(obs);
    EXPECT_EQ(EncodeObservation(s), obs);
  }
  SoccerState s;
  s.pos_a = 10;
  s.pos_b = 20;
  s.ball_a = true;
  EXPECT_EQ(EncodeObservation(s), (10 * 54 + 20) * 2 + 1);
  EXPECT_THROW(DecodeObservation(5832), std::out_of_range);
}

TEST(Soccer, ResetInvariantsAndBallFrequency) {
  const SoccerGame g;
  Rng rng(6);
  int ball_a = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const SoccerState s = g.Reset(rng);
    ASSERT_NE(s.pos_a, s.pos_b);
    ASSERT_LT(soccer::Col(s.pos_a), 4);
    ASSERT_GT(soccer::Col(s.pos_b), 4);
    ASSERT_EQ(s.t, 0);
    ball_a += s.ball_a;
  }
  EXPECT_NEAR(ball_a / double(n), 0.5, 0.02);
  Rng r1(11), r2(11);
  EXPECT_EQ(g.Reset(r1), g.Reset(r2));
}

TEST(Soccer, BothNoopKeepsState) {
  const SoccerGame g;
  Rng rng(7);
  SoccerState s;
  s.pos_a = Cell(1, 1);
  s.pos_b = Cell(4, 7);
  s.ball_a = false;
  const auto r = g.Step(s, soccer::kNoop, soccer::kNoop, rng);
  EXPECT_EQ(r.state.pos_a, s.pos_a);
  EXPECT_EQ(r.state.pos_b, s.pos_b);
  EXPECT_EQ(r.state.ball_a, s.ball_a);
  EXPECT_EQ(r.state.t, 1);
  EXPECT_EQ(r.reward, 0.0);
  EXPECT_FALSE(r.done);
}

TEST(Soccer, HolderScoresThroughGoalMouth) {
  const SoccerGame g;
  Rng rng(8);
  for (int row : {2, 3}) {
    SoccerState a;
    a.pos_a = Cell(row, 8);
    a.pos_b = Cell(0, 0);
    a.ball_a = true;
    const auto ra = g.Step(a, soccer::kRight, soccer::kNoop, rng);
    EXPECT_TRUE(ra.done);
    EXPECT_EQ(ra.reward, -1.0);  // team A is Player 1

    SoccerState b;
    b.pos_a = Cell(5, 8);
    b.pos_b = Cell(row, 0);
    b.ball_a = false;
    const auto rb = g.Step(b, soccer::kNoop, soccer::kLeft, rng);
    EXPECT_TRUE(rb.done);
    EXPECT_EQ(rb.reward, 1.0);
  }
  // Off-board outside the goal mouth is a blocked move, not a goal.
  SoccerState s;
  s.pos_a = Cell(0, 8);
  s.pos_b = Cell(5, 0);
  s.ball_a = true;
  const auto r = g.Step(s, soccer::kRight, soccer::kNoop, rng);
  EXPECT_FALSE(r.done);
  EXPECT_EQ(r.state.pos_a, s.pos_a);
  // Running into the own goal line does not score.
  SoccerState own;
  own.pos_a = Cell(2, 0);
  own.pos_b = Cell(5, 8);
  own.ball_a = true;
  EXPECT_FALSE(g.Step(own, soccer::kLeft, soccer::kNoop, rng).done);
}

TEST(Soccer, TimeoutIsDraw) {
  const SoccerGame g(SoccerConfig{.time_limit = 10});
  Rng rng(9);
  SoccerState s;
  s.pos_a = Cell(0, 0);
  s.pos_b = Cell(5, 8);
  s.t = 9;
  const auto r = g.Step(s, soccer::kNoop, soccer::kNoop, rng);
  EXPECT_TRUE(r.done);
  EXPECT_EQ(r.reward, 0.0);
  EXPECT_THROW(g.Step(r.state, soccer::kNoop, soccer::kNoop, rng),
               std::logic_error);
  EXPECT_THROW(g.Step(s, 5, soccer::kNoop, rng), std::invalid_argument);
}

TEST(Soccer, MoveIntoHolderStealsBall) {
  const SoccerGame g;
  // B holds the ball and stays; A moves into B. Order does not matter here.
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    SoccerState s;
    s.pos_a = Cell(2, 3);
    s.pos_b = Cell(2, 4);
    s.ball_a = false;
    const auto r = g.Step(s, soccer::kRight, soccer::kNoop, rng);
    EXPECT_EQ(r.state.pos_a, s.pos_a);
    EXPECT_EQ(r.state.pos_b, s.pos_b);
    EXPECT_TRUE(r.state.ball_a);
  }
}

TEST(Soccer, RandomPlayKeepsInvariants) {
  const SoccerGame g;
  Rng rng(10);
  SoccerState s = g.Reset(rng);
  for (int i = 0; i < 100000; ++i) {
    if (s.done) s = g.Reset(rng);
    const auto r = g.Step(s, rng.UniformInt(5), rng.UniformInt(5), rng);
    ASSERT_NE(r.state.pos_a, r.state.pos_b);
    ASSERT_GE(r.state.pos_a, 0);
    ASSERT_LT(r.state.pos_a, soccer::kCells);
    ASSERT_GE(r.state.pos_b, 0);
    ASSERT_LT(r.state.pos_b, soccer::kCells);
    ASSERT_TRUE(r.reward == 0.0 || r.done);
    s = r.state;
  }
}

TEST(Soccer, RolloutDeterministicAndBounded) {
  const SoccerGame g;
  const SoccerRulePolicy x(Side::kX), y(Side::kY);
  Rng a(12), b(12);
  const Trajectory ta = g.Rollout(x, y, a);
  const Trajectory tb = g.Rollout(x, y, b);
  ASSERT_EQ(ta.steps.size(), tb.steps.size());
  for (std::size_t i = 0; i < ta.steps.size(); ++i) {
    EXPECT_EQ(ta.steps[i].observation, tb.steps[i].observation);
    EXPECT_EQ(ta.steps[i].reward, tb.steps[i].reward);
  }
  EXPECT_LE(static_cast<int>(ta.steps.size()), g.horizon());
}

TEST(SoccerRule, HolderAlignedMovesTowardGoal) {
  const SoccerRulePolicy ra(Side::kX), rb(Side::kY);
  SoccerState s;
  s.pos_a = Cell(2, 7);
  s.pos_b = Cell(5, 0);
  s.ball_a = true;
  EXPECT_EQ(ra.Act(s), soccer::kRight);
  s.pos_a = Cell(0, 7);
  EXPECT_EQ(ra.Act(s), soccer::kDown);  // row first
  SoccerState t;
  t.pos_a = Cell(0, 8);
  t.pos_b = Cell(3, 1);
  t.ball_a = false;
  EXPECT_EQ(rb.Act(t), soccer::kLeft);
}

TEST(SoccerRule, ChaserClosesDistance) {
  const SoccerRulePolicy ra(Side::kX);
  const SoccerGame g;
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    SoccerState s = g.Reset(rng);
    s.ball_a = false;
    const int before = std::abs(soccer::Row(s.pos_a) - soccer::Row(s.pos_b)) +
                       std::abs(soccer::Col(s.pos_a) - soccer::Col(s.pos_b));
    const auto r = g.Step(s, ra.Act(s), soccer::kNoop, rng);
    const int after =
        std::abs(soccer::Row(r.state.pos_a) - soccer::Row(r.state.pos_b)) +
        std::abs(soccer::Col(r.state.pos_a) - soccer::Col(r.state.pos_b));
    if (before > 1) EXPECT_EQ(after, before - 1);
  }
}

TEST(SoccerRule, BeatsRandomAgent) {
  const auto env = MakeEnvironment("soccer");
  const Contestant rule{"rule", "soccer",
                        std::make_shared<SoccerRulePolicy>(Side::kX),
                        std::make_shared<SoccerRulePolicy>(Side::kY)};
  const Contestant random{"random", "soccer",
                          std::make_shared<UniformPolicy>(5, 5832),
                          std::make_shared<UniformPolicy>(5, 5832)};
  Rng rng(14);
  const MatchRecord r = PlayPairing(*env, rule, random, 1000, rng);
  EXPECT_EQ(r.matches(), 1000);
  // Scores 1.0 on this seed: the rule agent never lost a match.
  EXPECT_GT(r.ScoreA(), 0.7);
}

}  // namespace
}  // namespace selfplay
