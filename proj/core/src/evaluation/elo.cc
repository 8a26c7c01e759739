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

#include "selfplay/evaluation/elo.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "json.hpp"

namespace selfplay {
namespace {

constexpr double kEloScale = 400.0;
const double kLogisticSlope = std::log(10.0) / kEloScale;

// Aggregated comparisons between two player indices.
struct Edge {
  int i = 0;
  int j = 0;
  double score_i = 0.0;  // wins_i + draws / 2
  double n = 0.0;
};

double LogSigmoid(double z) {
  return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogLikelihood(const std::vector<Edge>& edges,
                     const std::vector<double>& r) {
  double ll = 0.0;
  for (const Edge& e : edges) {
    const double z = kLogisticSlope * (r[e.i] - r[e.j]);
    ll += e.score_i * LogSigmoid(z) + (e.n - e.score_i) * LogSigmoid(-z);
  }
  return ll;
}

int Find(std::vector<int>& parent, int v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

}  // namespace

double EloExpectedScore(double rating_a, double rating_b) {
  return 1.0 / (1.0 + std::pow(10.0, (rating_b - rating_a) / kEloScale));
}

EloTable FitElo(const MatchResults& results, const std::string& anchor,
                const EloFitOptions& options) {
  std::vector<std::string> ids;
  for (const MatchRecord& r : results.records) {
    if (r.matches() == 0) continue;
    ids.push_back(r.agent_a);
    ids.push_back(r.agent_b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) {
    throw std::invalid_argument("FitElo: no matches in results");
  }
  if (!std::binary_search(ids.begin(), ids.end(), anchor)) {
    throw std::invalid_argument("FitElo: anchor '" + anchor +
                                "' played no matches");
  }
  auto index_of = [&ids](const std::string& id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) -
                            ids.begin());
  };
  const int n = static_cast<int>(ids.size());

  std::vector<Edge> edges;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const MatchRecord& r : results.records) {
    if (r.matches() == 0) continue;
    if (r.agent_a == r.agent_b) continue;  // self-play carries no information
    Edge e;
    e.i = index_of(r.agent_a);
    e.j = index_of(r.agent_b);
    e.score_i = static_cast<double>(r.wins_a) + 0.5 * r.draws;
    e.n = static_cast<double>(r.matches());
    edges.push_back(e);
    parent[Find(parent, e.i)] = Find(parent, e.j);
  }

  EloTable table;
  table.anchor = anchor;
  table.converged = true;
  std::vector<double> ratings(n, 0.0);

  // Components are processed in order of their smallest member.
  std::vector<int> root(n);
  for (int v = 0; v < n; ++v) root[v] = Find(parent, v);
  std::vector<int> done_roots;
  for (int v = 0; v < n; ++v) {
    if (std::find(done_roots.begin(), done_roots.end(), root[v]) !=
        done_roots.end()) {
      continue;
    }
    done_roots.push_back(root[v]);
    std::vector<int> members;
    for (int u = 0; u < n; ++u) {
      if (root[u] == root[v]) members.push_back(u);
    }
    const int anchor_idx = index_of(anchor);
    int pin = members.front();
    if (root[anchor_idx] == root[v]) {
      pin = anchor_idx;
    } else {
      table.warnings.push_back("comparison graph is disconnected; component "
                               "containing '" +
                               ids[pin] + "' is anchored at '" + ids[pin] +
                               "' = 0");
    }
    if (members.size() == 1) continue;

    // Free variables: members except the pinned one.
    std::vector<int> slot(n, -1);
    int free_count = 0;
    for (int u : members) {
      if (u != pin) slot[u] = free_count++;
    }
    std::vector<Edge> comp_edges;
    for (const Edge& e : edges) {
      if (root[e.i] == root[v]) comp_edges.push_back(e);
    }

    auto gradient = [&](const std::vector<double>& r) {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(free_count);
      for (const Edge& e : comp_edges) {
        const double p = Sigmoid(kLogisticSlope * (r[e.i] - r[e.j]));
        const double d = kLogisticSlope * (e.score_i - e.n * p);
        if (slot[e.i] >= 0) g(slot[e.i]) += d;
        if (slot[e.j] >= 0) g(slot[e.j]) -= d;
      }
      return g;
    };

    bool converged = false;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
      const Eigen::VectorXd g = gradient(ratings);
      if (g.lpNorm<Eigen::Infinity>() < options.tolerance) {
        converged = true;
        break;
      }
      // Negative Hessian: weighted graph Laplacian restricted to free nodes.
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(free_count, free_count);
      for (const Edge& e : comp_edges) {
        const double p = Sigmoid(kLogisticSlope * (ratings[e.i] - ratings[e.j]));
        const double w = kLogisticSlope * kLogisticSlope * e.n * p * (1.0 - p);
        const int a = slot[e.i];
        const int b = slot[e.j];
        if (a >= 0) h(a, a) += w;
        if (b >= 0) h(b, b) += w;
        if (a >= 0 && b >= 0) {
          h(a, b) -= w;
          h(b, a) -= w;
        }
      }
      h.diagonal().array() += 1e-12;
      const Eigen::VectorXd step = h.ldlt().solve(g);

      const double ll0 = LogLikelihood(comp_edges, ratings);
      double t = 1.0;
      std::vector<double> trial = ratings;
      for (int ls = 0; ls < 60; ++ls) {
        for (int u : members) {
          if (slot[u] >= 0) trial[u] = ratings[u] + t * step(slot[u]);
        }
        if (LogLikelihood(comp_edges, trial) >= ll0 - 1e-12 * std::abs(ll0)) {
          break;
        }
        t *= 0.5;
      }
      ratings = trial;
    }
    table.iterations = std::max(table.iterations, iter);
    const double gnorm = gradient(ratings).lpNorm<Eigen::Infinity>();
    table.gradient_inf_norm = std::max(table.gradient_inf_norm, gnorm);
    if (!converged) {
      table.converged = false;
      table.warnings.push_back(
          "Elo fit did not converge for component containing '" + ids[pin] +
          "' (an undefeated or winless agent has no finite MLE)");
    }
    // Pinned node is exactly zero: the reference point of the component.
    const double offset = ratings[pin];
    for (int u : members) ratings[u] -= offset;
    ratings[pin] = 0.0;
  }

  for (int u = 0; u < n; ++u) table.ratings[ids[u]] = ratings[u];
  table.log_likelihood = LogLikelihood(edges, ratings);
  return table;
}

std::string EloTableToJson(const EloTable& table) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json ratings = nlohmann::ordered_json::object();
  for (const auto& [id, r] : table.ratings) ratings[id] = r;
  j["ratings"] = std::move(ratings);
  j["anchor"] = table.anchor;
  j["iterations"] = table.iterations;
  j["log_likelihood"] = table.log_likelihood;
  j["converged"] = table.converged;
  j["warnings"] = table.warnings;
  return j.dump(2) + "\n";
}

}  // namespace selfplay
