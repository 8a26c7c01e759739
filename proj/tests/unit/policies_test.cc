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
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "selfplay/policies/simplex_policy.h"
#include "selfplay/policies/tabular_softmax_policy.h"

namespace selfplay {
namespace {

double LogProb(const TabularSoftmaxPolicy& p, int obs, int a) {
  return std::log(p.ActionDistribution(obs)[a]);
}

TEST(TabularSoftmax, ZeroLogitsAreUniform) {
  const TabularSoftmaxPolicy p(4, 5);
  for (int obs = 0; obs < 4; ++obs) {
    for (double q : p.ActionDistribution(obs)) EXPECT_DOUBLE_EQ(q, 0.2);
  }
  EXPECT_NEAR(Entropy(p, 0), std::log(5.0), 1e-15);
}

TEST(TabularSoftmax, LargeLogitIsOneHot) {
  TabularSoftmaxPolicy p(1, 5);
  p.row(0)[3] = 1000.0;
  const auto d = p.ActionDistribution(0);
  EXPECT_EQ(d[3], 1.0);
  EXPECT_EQ(d[0], 0.0);
  EXPECT_NEAR(Entropy(p, 0), 0.0, 1e-12);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(p.Sample(0, rng), 3);
}

TEST(TabularSoftmax, OutOfRangeObservation) {
  const TabularSoftmaxPolicy p(3, 5);
  EXPECT_THROW(p.ActionDistribution(3), std::out_of_range);
  EXPECT_THROW(p.ActionDistribution(-1), std::out_of_range);
  EXPECT_THROW(TabularSoftmaxPolicy(3, 5, std::vector<double>(14)),
               std::invalid_argument);
}

TEST(TabularSoftmax, UniformSamplingFrequencies) {
  const TabularSoftmaxPolicy p(1, 5);
  Rng rng(2);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 100000; ++i) ++counts[p.Sample(0, rng)];
  for (int c : counts) EXPECT_NEAR(c / 1e5, 0.2, 0.01);
  Rng a(3), b(3);
  EXPECT_EQ(p.Sample(0, a), p.Sample(0, b));
}

TEST(TabularSoftmax, ScoreAtUniformIsClosedForm) {
  const TabularSoftmaxPolicy p(2, 5);
  const auto g = p.LogProbGradient(1, 2);
  ASSERT_EQ(g.size(), 10u);
  for (int j = 0; j < 5; ++j) EXPECT_EQ(g[j], 0.0);
  for (int j = 0; j < 5; ++j) {
    EXPECT_NEAR(g[5 + j], (j == 2 ? 1.0 : 0.0) - 0.2, 1e-15);
  }
}

TEST(TabularSoftmax, ScoreMatchesFiniteDifferences) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> logits(3 * 5);
    for (auto& l : logits) l = 2.0 * rng.Uniform() - 1.0;
    TabularSoftmaxPolicy p(3, 5, logits);
    const int obs = rng.UniformInt(3);
    const int a = rng.UniformInt(5);
    const auto g = p.LogProbGradient(obs, a);
    std::vector<double> d(logits.size());
    for (auto& v : d) v = rng.Uniform() - 0.5;
    const double h = 1e-6;
    auto shifted = [&](double s) {
      std::vector<double> l = logits;
      for (std::size_t i = 0; i < l.size(); ++i) l[i] += s * d[i];
      return LogProb(TabularSoftmaxPolicy(3, 5, l), obs, a);
    };
    const double fd = (shifted(h) - shifted(-h)) / (2 * h);
    double dot = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) dot += g[i] * d[i];
    EXPECT_NEAR(fd, dot, 1e-5);
  }
}

TEST(TabularSoftmax, EntropyGradientMatchesFiniteDifferences) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> logits(5);
    for (auto& l : logits) l = 3.0 * rng.Uniform() - 1.5;
    const TabularSoftmaxPolicy p(1, 5, logits);
    std::vector<double> g(5);
    p.EntropyGradientRow(0, g);
    for (int j = 0; j < 5; ++j) {
      const double h = 1e-6;
      std::vector<double> lp = logits, lm = logits;
      lp[j] += h;
      lm[j] -= h;
      const double fd = (Entropy(TabularSoftmaxPolicy(1, 5, lp), 0) -
                         Entropy(TabularSoftmaxPolicy(1, 5, lm), 0)) /
                        (2 * h);
      EXPECT_NEAR(g[j], fd, 1e-5);
    }
  }
}

TEST(TabularSoftmax, ScoreHasZeroMean) {
  Rng rng(6);
  std::vector<double> logits(5);
  for (auto& l : logits) l = rng.Uniform() * 4 - 2;
  const TabularSoftmaxPolicy p(1, 5, logits);
  const auto pi = p.ActionDistribution(0);
  std::vector<double> mean(5, 0.0), row(5);
  for (int a = 0; a < 5; ++a) {
    p.LogProbGradientRow(0, a, row);
    for (int j = 0; j < 5; ++j) mean[j] += pi[a] * row[j];
  }
  for (double m : mean) EXPECT_NEAR(m, 0.0, 1e-15);
}

TEST(SimplexPolicy, DistributionIsIdentity) {
  const SimplexPolicy p({0.25, 0.75});
  EXPECT_EQ(p.ActionDistribution(0), (std::vector<double>{0.25, 0.75}));
  EXPECT_EQ(p.num_observations(), 1);
}

TEST(SimplexPolicy, ScoreIsInverseProbability) {
  const SimplexPolicy p({0.5, 0.5});
  EXPECT_EQ(p.LogProbGradient(0), (std::vector<double>{2.0, 0.0}));
  const SimplexPolicy q({1.0, 0.0});
  EXPECT_THROW(q.LogProbGradient(1), std::domain_error);
}

TEST(SimplexPolicy, RejectsInvalidVectors) {
  EXPECT_THROW(SimplexPolicy({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(SimplexPolicy({-0.1, 1.1}), std::invalid_argument);
  EXPECT_THROW(SimplexPolicy(std::vector<double>{}), std::invalid_argument);
  SimplexPolicy p({0.5, 0.5});
  EXPECT_THROW(p.set_probabilities({0.2, 0.2}), std::invalid_argument);
}

TEST(SimplexPolicy, ScoreHasZeroMeanByMonteCarlo) {
  // E[grad log p(a)] over direct parameters is the all-ones vector, so the
  // component along any direction that keeps the sum fixed has mean zero.
  const SimplexPolicy p({0.2, 0.3, 0.5});
  Rng rng(7);
  const int m = 100000;
  std::vector<double> sum(3, 0.0), sq(3, 0.0);
  for (int i = 0; i < m; ++i) {
    const auto g = p.LogProbGradient(p.Sample(0, rng));
    for (int j = 0; j < 3; ++j) {
      const double c = g[j] - 1.0;
      sum[j] += c;
      sq[j] += c * c;
    }
  }
  for (int j = 0; j < 3; ++j) {
    const double mean = sum[j] / m;
    const double sd = std::sqrt(sq[j] / m - mean * mean);
    EXPECT_LE(std::abs(mean), 3.0 * sd / std::sqrt(double(m)));
  }
}

TEST(SimplexPolicy, DirichletDrawIsOnSimplex) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const SimplexPolicy p = SimplexPolicy::RandomDirichlet(3, rng);
    double s = 0.0;
    for (double q : p.probabilities()) {
      EXPECT_GE(q, 0.0);
      s += q;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(UniformPolicyTest, FlatDistribution) {
  const UniformPolicy u(4, 10);
  for (double q : u.ActionDistribution(9)) EXPECT_EQ(q, 0.25);
  EXPECT_THROW(u.ActionDistribution(10), std::out_of_range);
}

TEST(ValueTableTest, RejectsNonFinite) {
  EXPECT_THROW(ValueTable({0.0, std::numeric_limits<double>::infinity()}),
               std::invalid_argument);
  ValueTable v(3);
  v.values()[1] = 2.5;
  EXPECT_EQ(v[1], 2.5);
}

}  // namespace
}  // namespace selfplay
