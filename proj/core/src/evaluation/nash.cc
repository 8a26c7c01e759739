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

#include "selfplay/evaluation/nash.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace selfplay {
namespace {

using Rational = boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

// Every finite double is a dyadic rational; convert without rounding.
Rational ExactRational(double v) {
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5,1)
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r{cpp_int(scaled)};
  const int shift = exp - 53;
  cpp_int pow2 = cpp_int(1) << std::abs(shift);
  return shift >= 0 ? r * Rational(pow2) : r / Rational(pow2);
}

using RMatrix = std::vector<std::vector<Rational>>;

// Solves A z = b in place; returns nullopt if A is singular.
std::optional<std::vector<Rational>> Solve(RMatrix a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = b[i] / a[i][i];
  return z;
}

std::vector<std::vector<int>> Subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<double> ToDouble(const std::vector<Rational>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
  return out;
}

void AddUnique(std::vector<std::vector<Rational>>& set,
               std::vector<Rational> v) {
  if (std::find(set.begin(), set.end(), v) == set.end()) {
    set.push_back(std::move(v));
  }
}

}  // namespace

NashSolution SolveNash(const MatrixGame& game) {
  const int rows = game.rows();
  const int cols = game.cols();
  if (rows > kMaxNashDimension || cols > kMaxNashDimension) {
    throw std::invalid_argument("SolveNash supports games up to 6 x 6");
  }
  RMatrix m(rows, std::vector<Rational>(cols));
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) m[a][b] = ExactRational(game.at(a, b));
  }

  std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> first;
  std::optional<Rational> value;
  std::vector<std::vector<Rational>> extreme_x;
  std::vector<std::vector<Rational>> extreme_y;

  for (int k = 1; k <= std::min(rows, cols); ++k) {
    const auto row_sets = Subsets(rows, k);
    const auto col_sets = Subsets(cols, k);
    for (const auto& I : row_sets) {
      for (const auto& J : col_sets) {
        // x on I makes every column in J pay v: sum_i x_i M[i][j] - v = 0.
        RMatrix ax(k + 1, std::vector<Rational>(k + 1));
        std::vector<Rational> bx(k + 1, Rational(0));
        for (int r = 0; r < k; ++r) {
          for (int c = 0; c < k; ++c) ax[r][c] = m[I[c]][J[r]];
          ax[r][k] = -1;
        }
        for (int c = 0; c < k; ++c) ax[k][c] = 1;
        bx[k] = 1;
        auto sx = Solve(ax, bx);
        if (!sx) continue;

        RMatrix ay(k + 1, std::vector<Rational>(k + 1));
        std::vector<Rational> by(k + 1, Rational(0));
        for (int r = 0; r < k; ++r) {
          for (int c = 0; c < k; ++c) ay[r][c] = m[I[r]][J[c]];
          ay[r][k] = -1;
        }
        for (int c = 0; c < k; ++c) ay[k][c] = 1;
        by[k] = 1;
        auto sy = Solve(ay, by);
        if (!sy) continue;

        const Rational v = (*sx)[k];
        if ((*sy)[k] != v) continue;

        std::vector<Rational> x(rows, Rational(0));
        std::vector<Rational> y(cols, Rational(0));
        bool nonneg = true;
        for (int i = 0; i < k; ++i) {
          x[I[i]] = (*sx)[i];
          y[J[i]] = (*sy)[i];
          nonneg = nonneg && x[I[i]] >= 0 && y[J[i]] >= 0;
        }
        if (!nonneg) continue;

        // No pure deviation helps: (M y)_a >= v for Player 1 (minimiser),
        // (M^T x)_b <= v for Player 2 (maximiser).
        bool stable = true;
        for (int a = 0; a < rows && stable; ++a) {
          Rational row_val = 0;
          for (int b = 0; b < cols; ++b) row_val += m[a][b] * y[b];
          stable = row_val >= v;
        }
        for (int b = 0; b < cols && stable; ++b) {
          Rational col_val = 0;
          for (int a = 0; a < rows; ++a) col_val += m[a][b] * x[a];
          stable = col_val <= v;
        }
        if (!stable) continue;

        if (!first) {
          first.emplace(x, y);
          value = v;
        } else if (*value != v) {
          throw std::logic_error("SolveNash: inconsistent game values");
        }
        AddUnique(extreme_x, x);
        AddUnique(extreme_y, y);
      }
    }
  }
  if (!first) {
    throw std::runtime_error("SolveNash: no equilibrium found for " +
                             game.name());
  }

  NashSolution sol;
  sol.x = ToDouble(first->first);
  sol.y = ToDouble(first->second);
  sol.value = static_cast<double>(*value);
  sol.exact = true;
  for (const auto& v : extreme_x) sol.extreme_x.push_back(ToDouble(v));
  for (const auto& v : extreme_y) sol.extreme_y.push_back(ToDouble(v));
  return sol;
}

double DualityGap(const MatrixGame& game, std::span<const double> x,
                  std::span<const double> y) {
  const auto col_vals = game.ColumnValues(x);
  const auto row_vals = game.RowValues(y);
  return *std::max_element(col_vals.begin(), col_vals.end()) -
         *std::min_element(row_vals.begin(), row_vals.end());
}

double SquaredDistanceToHull(std::span<const double> p,
                             const std::vector<std::vector<double>>& vertices) {
  if (vertices.empty()) {
    throw std::invalid_argument("SquaredDistanceToHull: no vertices");
  }
  const int n = static_cast<int>(vertices.size());
  if (n > 16) {
    throw std::invalid_argument("SquaredDistanceToHull: too many vertices");
  }
  const int dim = static_cast<int>(p.size());
  Eigen::Map<const Eigen::VectorXd> target(p.data(), dim);
  double best = std::numeric_limits<double>::infinity();

  // Project onto the affine hull of every vertex subset; keep projections
  // with non-negative barycentric weights. The closest one is the answer.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    if (static_cast<int>(idx.size()) > dim + 1) continue;
    Eigen::Map<const Eigen::VectorXd> base(vertices[idx[0]].data(), dim);
    const int k = static_cast<int>(idx.size()) - 1;
    Eigen::VectorXd weights(k + 1);
    Eigen::VectorXd proj = base;
    if (k > 0) {
      Eigen::MatrixXd dirs(dim, k);
      for (int j = 0; j < k; ++j) {
        dirs.col(j) =
            Eigen::Map<const Eigen::VectorXd>(vertices[idx[j + 1]].data(), dim) -
            base;
      }
      const Eigen::MatrixXd gram = dirs.transpose() * dirs;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
      if (lu.rank() < k) continue;
      const Eigen::VectorXd mu = lu.solve(dirs.transpose() * (target - base));
      proj = base + dirs * mu;
      weights(0) = 1.0 - mu.sum();
      weights.tail(k) = mu;
    } else {
      weights(0) = 1.0;
    }
    if ((weights.array() < -1e-12).any()) continue;
    best = std::min(best, (target - proj).squaredNorm());
  }
  return best;
}

EquilibriumSet::EquilibriumSet(const MatrixGame& game)
    : solution_(SolveNash(game)) {}

EquilibriumSet::EquilibriumSet(NashSolution solution)
    : solution_(std::move(solution)) {}

double EquilibriumSet::SquaredDistanceX(std::span<const double> x) const {
  return SquaredDistanceToHull(x, solution_.extreme_x);
}

double EquilibriumSet::SquaredDistanceY(std::span<const double> y) const {
  return SquaredDistanceToHull(y, solution_.extreme_y);
}

double EquilibriumDistance(std::span<const double> x,
                           std::span<const double> y, const MatrixGame& game) {
  return EquilibriumSet(game).SquaredDistance(x, y);
}

}  // namespace selfplay
