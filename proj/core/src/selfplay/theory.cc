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

#include "selfplay/selfplay/theory.h"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "selfplay/common/rng.h"
#include "selfplay/estimators/estimators.h"
#include "selfplay/policies/simplex_policy.h"

namespace selfplay {

std::vector<MixedStrategy> SimplexGrid(int dim, double step) {
  if (dim < 1) throw std::invalid_argument("SimplexGrid: dim must be >= 1");
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("SimplexGrid: step must be in (0, 1]");
  }
  const double inv = 1.0 / step;
  const long parts = std::lround(inv);
  if (std::abs(inv - static_cast<double>(parts)) > 1e-9) {
    throw std::invalid_argument("SimplexGrid: 1 / step must be an integer");
  }
  std::vector<MixedStrategy> grid;
  std::vector<long> counts(dim, 0);
  std::function<void(int, long)> fill = [&](int pos, long left) {
    if (pos == dim - 1) {
      counts[pos] = left;
      MixedStrategy p(dim);
      for (int i = 0; i < dim; ++i) {
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(parts);
      }
      grid.push_back(std::move(p));
      return;
    }
    for (long c = 0; c <= left; ++c) {
      counts[pos] = c;
      fill(pos + 1, left - c);
    }
  };
  fill(0, parts);
  return grid;
}

void TheoryRunConfig::Validate(const MatrixGame& game) const {
  theory.Validate();
  CheckSimplex(x0, game.rows(), 1e-9);
  CheckSimplex(y0, game.cols(), 1e-9);
  for (const auto& c : candidates_x) CheckSimplex(c, game.rows(), 1e-9);
  for (const auto& c : candidates_y) CheckSimplex(c, game.cols(), 1e-9);
  if (max_iterations < 1) {
    throw std::invalid_argument("theory: max_iterations must be >= 1");
  }
}

namespace {

double NormSq(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return s;
}

class PayoffOracle {
 public:
  PayoffOracle(const MatrixGame& game, bool exact, uint64_t seed)
      : game_(game), exact_(exact), seed_(seed) {}

  double Payoff(const MixedStrategy& x, const MixedStrategy& y, int64_t m,
                uint64_t k, uint64_t slot) const {
    if (exact_) return game_.Payoff(x, y);
    Rng rng = Rng::Derive(seed_, {Tag(StreamTag::kTheory), k, 0, slot});
    double total = 0.0;
    for (int64_t i = 0; i < m; ++i) total += game_.Sample(x, y, rng).r;
    return total / static_cast<double>(m);
  }

  // Gradient of f with respect to `side`'s strategy against `other`.
  std::vector<double> Gradient(const MixedStrategy& x, const MixedStrategy& y,
                               Side side, int64_t m, uint64_t k) const {
    if (exact_) {
      return side == Side::kX ? game_.RowValues(y) : game_.ColumnValues(x);
    }
    Rng rng = Rng::Derive(seed_, {Tag(StreamTag::kTheory), k, 1,
                                  side == Side::kX ? 0u : 1u});
    const SimplexPolicy px(x);
    const SimplexPolicy py(y);
    std::vector<Trajectory> batch;
    batch.reserve(m);
    for (int64_t i = 0; i < m; ++i) batch.push_back(game_.Rollout(px, py, rng));
    return ReinforceGradient(batch, side == Side::kX ? px : py, side).g;
  }

 private:
  const MatrixGame& game_;
  bool exact_;
  uint64_t seed_;
};

}  // namespace

TheoryResult TrainSingleTheory(const MatrixGame& game,
                               const TheoryRunConfig& config) {
  config.Validate(game);
  const TheoryConfig& th = config.theory;
  const PayoffOracle oracle(game, config.exact, config.seed);
  const auto nx = static_cast<int>(config.candidates_x.size());
  const auto ny = static_cast<int>(config.candidates_y.size());

  TheoryResult result;
  MixedStrategy x = config.x0;
  MixedStrategy y = config.y0;
  for (int k = 0; k < config.max_iterations; ++k) {
    const int64_t m = config.exact ? 0 : SampleSizeSchedule(k, th);
    const uint64_t uk = static_cast<uint64_t>(k);
    GapRecord rec;
    rec.k = k;
    rec.m_k = m;
    rec.x = x;
    rec.y = y;
    // The shared f(x, y) estimate is both the self candidate of x and of y,
    // so f(x, v) >= f(x, y) >= f(u, y) holds for the estimates.
    rec.f_xy = oracle.Payoff(x, y, m, uk, 0);
    rec.v_index = ny;
    rec.f_xv = rec.f_xy;
    for (int j = 0; j < ny; ++j) {
      const double f = oracle.Payoff(x, config.candidates_y[j], m, uk,
                                     1 + static_cast<uint64_t>(j));
      if (f > rec.f_xv) {
        rec.f_xv = f;
        rec.v_index = j;
      }
    }
    rec.u_index = nx;
    rec.f_uy = rec.f_xy;
    for (int i = 0; i < nx; ++i) {
      const double f = oracle.Payoff(config.candidates_x[i], y, m, uk,
                                     1 + static_cast<uint64_t>(ny + i));
      if (f < rec.f_uy) {
        rec.f_uy = f;
        rec.u_index = i;
      }
    }
    rec.e_hat = rec.f_xv - rec.f_uy;
    if (rec.e_hat <= 3.0 * th.epsilon) {
      result.records.push_back(std::move(rec));
      result.stopped = true;
      break;
    }
    const MixedStrategy& v =
        rec.v_index == ny ? y : config.candidates_y[rec.v_index];
    const MixedStrategy& u =
        rec.u_index == nx ? x : config.candidates_x[rec.u_index];
    rec.gx = oracle.Gradient(x, v, Side::kX, m, uk);
    rec.gy = oracle.Gradient(u, y, Side::kY, m, uk);
    rec.eta = AdaptiveLearningRate(rec.e_hat, th.epsilon, NormSq(rec.gx),
                                   NormSq(rec.gy), th.alpha);
    x = SgdStep(x, rec.gx, rec.eta, 1.0, ProjectSimplex);
    y = SgdStep(y, rec.gy, rec.eta, -1.0, ProjectSimplex);
    result.records.push_back(std::move(rec));
  }
  result.x = std::move(x);
  result.y = std::move(y);
  return result;
}

}  // namespace selfplay
