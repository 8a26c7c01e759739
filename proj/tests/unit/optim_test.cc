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

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "selfplay/common/rng.h"
#include "selfplay/estimators/estimators.h"
#include "selfplay/games/matrix_game.h"
#include "selfplay/optim/optim.h"

namespace selfplay {
namespace {

TEST(ProjectSimplex, Examples) {
  EXPECT_EQ(ProjectSimplex(std::vector<double>{0.5, 0.5}),
            (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(ProjectSimplex(std::vector<double>{1.0, 1.0}),
            (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(ProjectSimplex(std::vector<double>{2.0, 0.0}),
            (std::vector<double>{1.0, 0.0}));
}

// KKT: p = max(v - theta, 0) with sum p = 1; theta is the unique root.
TEST(ProjectSimplex, SatisfiesKktConditions) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.UniformInt(5);
    std::vector<double> v(n);
    for (auto& e : v) e = 4.0 * rng.Uniform() - 2.0;
    const auto p = ProjectSimplex(v);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    double theta = 0.0;
    int support = 0;
    for (int i = 0; i < n; ++i) {
      if (p[i] > 0) {
        theta += v[i] - p[i];
        ++support;
      }
    }
    ASSERT_GT(support, 0);
    theta /= support;
    for (int i = 0; i < n; ++i) {
      EXPECT_GE(p[i], 0.0);
      if (p[i] > 0) {
        EXPECT_NEAR(v[i] - p[i], theta, 1e-12);
      } else {
        EXPECT_LE(v[i], theta + 1e-12);
      }
    }
    // Idempotent on its own output.
    const auto q = ProjectSimplex(p);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(p[i], q[i], 1e-15);
  }
}

TEST(SgdStep, IdentityCases) {
  const std::vector<double> p = {0.3, 0.7}, g = {1.0, -2.0};
  EXPECT_EQ(SgdStep(p, g, 0.0, 1.0, ProjectSimplex), p);
  EXPECT_EQ(SgdStep(p, std::vector<double>{0, 0}, 0.5, 1.0, ProjectSimplex), p);
  EXPECT_THROW(SgdStep(p, std::vector<double>{1.0}, 0.1, 1.0),
               std::invalid_argument);
}

TEST(SgdStep, ComposesExactGradientAndProjection) {
  const MatrixGame g = MatchingPennies();
  const std::vector<double> x = {0.6, 0.4}, y = {0.7, 0.3};
  const auto [gx, gy] = ExactGradient(g, x, y);
  // gx = M y = (-0.4, 0.4); x - 0.1 gx = (0.64, 0.36), already on the simplex.
  const auto nx = SgdStep(x, gx, 0.1, 1.0, ProjectSimplex);
  EXPECT_NEAR(nx[0], 0.64, 1e-15);
  EXPECT_NEAR(nx[1], 0.36, 1e-15);
  // gy = M^T x = (-0.2, 0.2); y + 2 gy = (0.3, 0.7).
  const auto ny = SgdStep(y, gy, 2.0, -1.0, ProjectSimplex);
  EXPECT_NEAR(ny[0], 0.3, 1e-15);
  EXPECT_NEAR(ny[1], 0.7, 1e-15);
  // A long step leaves the simplex and is projected back onto a vertex.
  const auto far = SgdStep(x, gx, 10.0, 1.0, ProjectSimplex);
  EXPECT_EQ(far, (std::vector<double>{1.0, 0.0}));
}

TEST(RmsPropTest, ZeroGradientDecaysAccumulatorOnly) {
  RmsProp opt(2, 0.99);
  std::vector<double> params = {1.0, 2.0};
  opt.Step(params, std::vector<double>{1.0, 0.0}, 0.1);
  const double acc0 = opt.accumulator()[0];
  const auto before = params;
  opt.Step(params, std::vector<double>{0.0, 0.0}, 0.1);
  EXPECT_EQ(params, before);
  EXPECT_NEAR(opt.accumulator()[0], 0.99 * acc0, 1e-18);
}

TEST(RmsPropTest, FirstStepFormula) {
  RmsProp opt(1, 0.99);
  std::vector<double> p = {0.0};
  opt.Step(p, std::vector<double>{1.0}, 0.1);
  EXPECT_DOUBLE_EQ(p[0], -0.1 / std::sqrt(0.01 + 1e-8));
}

TEST(RmsPropTest, MatchesScalarRecurrence) {
  RmsProp opt(1, 0.99);
  std::vector<double> p = {0.5};
  double acc = 0.0, want = 0.5;
  for (int i = 0; i < 10; ++i) {
    opt.Step(p, std::vector<double>{1.0}, 0.01);
    acc = 0.99 * acc + 0.01;
    want -= 0.01 / std::sqrt(acc + 1e-8);
  }
  EXPECT_NEAR(p[0], want, 1e-14);
  EXPECT_NEAR(opt.accumulator()[0], acc, 1e-15);
  EXPECT_THROW(RmsProp(1, 1.0), std::invalid_argument);
}

TEST(RmsPropTest, BlocksShareOneState) {
  RmsProp whole(4), split(4);
  std::vector<double> a = {1, 2, 3, 4}, b = a;
  const std::vector<double> g = {0.5, -1, 2, 0.25};
  whole.Step(a, g, 0.1);
  split.StepBlock(0, std::span<double>(b).subspan(0, 2),
                  std::span<const double>(g).subspan(0, 2), 0.1);
  split.StepBlock(2, std::span<double>(b).subspan(2, 2),
                  std::span<const double>(g).subspan(2, 2), 0.1);
  EXPECT_EQ(a, b);
  EXPECT_THROW(split.StepBlock(3, std::span<double>(b).subspan(0, 2),
                               std::span<const double>(g).subspan(0, 2), 0.1),
               std::invalid_argument);
}

TEST(ClipByGlobalNormTest, ScalesOnlyAboveThreshold) {
  std::vector<double> a = {3.0}, b = {4.0};
  const std::array<std::span<double>, 2> blocks = {std::span<double>(a),
                                                   std::span<double>(b)};
  EXPECT_DOUBLE_EQ(ClipByGlobalNorm(blocks, 1.0), 5.0);
  EXPECT_NEAR(a[0], 0.6, 1e-15);
  EXPECT_NEAR(b[0], 0.8, 1e-15);
  EXPECT_NEAR(ClipByGlobalNorm(blocks, 2.0), 1.0, 1e-15);
  EXPECT_NEAR(a[0], 0.6, 1e-15);
}

TEST(AdaptiveLr, Examples) {
  EXPECT_NEAR(AdaptiveLearningRate(0.5, 0.1, 0.4, 0.6, 1.0), 0.3, 1e-15);
  EXPECT_EQ(AdaptiveLearningRate(0.5, 0.1, 0.4, 0.6, 0.0), 0.0);
  const double base = AdaptiveLearningRate(0.9, 0.1, 0.3, 0.2, 1.5);
  EXPECT_NEAR(AdaptiveLearningRate(0.9, 0.1, 0.6, 0.4, 1.5), base / 2, 1e-15);
  EXPECT_THROW(AdaptiveLearningRate(0.9, 0.1, 0.0, 0.0, 1.0), std::domain_error);
}

TEST(SampleSchedule, TheoryBound) {
  TheoryConfig cfg;
  cfg.R = cfg.B = cfg.D = 1.0;
  cfg.epsilon = 0.1;
  cfg.delta = 0.1;
  cfg.d = 2;
  EXPECT_EQ(SampleSizeSchedule(0, cfg), 738);
  int64_t prev = SampleSizeSchedule(0, cfg);
  for (int k = 1; k < 20; ++k) {
    const int64_t m = SampleSizeSchedule(k, cfg);
    EXPECT_GT(m, prev);
    EXPECT_LE(m - prev, static_cast<int64_t>(std::ceil(200 * std::log(2.0))) + 1);
    prev = m;
  }
  cfg.alpha = 2.5;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
}

TEST(LrScheduleTest, ParseAndEvaluate) {
  EXPECT_EQ(ParseLrSchedule("constant"), LrSchedule::kConstant);
  EXPECT_EQ(ParseLrSchedule("linear_to_zero"), LrSchedule::kLinearToZero);
  EXPECT_EQ(ParseLrSchedule("theory_adaptive"), LrSchedule::kTheoryAdaptive);
  EXPECT_THROW(ParseLrSchedule("cosine"), std::invalid_argument);
  EXPECT_EQ(ScheduledLearningRate(0.2, LrSchedule::kConstant, 7, 10), 0.2);
  EXPECT_NEAR(ScheduledLearningRate(0.2, LrSchedule::kLinearToZero, 5, 10), 0.1,
              1e-15);
  EXPECT_THROW(ScheduledLearningRate(0.2, LrSchedule::kTheoryAdaptive, 0, 1),
               std::invalid_argument);
}

}  // namespace
}  // namespace selfplay
