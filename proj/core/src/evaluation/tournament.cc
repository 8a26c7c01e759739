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

#include "selfplay/evaluation/tournament.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "selfplay/common/parallel.h"

namespace selfplay {

double MatchRecord::ScoreA() const {
  const int64_t n = matches();
  if (n == 0) return 0.5;
  return (static_cast<double>(wins_a) + 0.5 * static_cast<double>(draws)) / n;
}

MatchRecord PlayPairing(const Environment& env, const Contestant& a,
                        const Contestant& b, int64_t matches, Rng& rng) {
  MatchRecord rec;
  rec.agent_a = a.id;
  rec.agent_b = b.id;
  double sum_ab = 0.0;
  double sum_ba = 0.0;
  for (int64_t k = 0; k < matches; ++k) {
    const bool a_is_x = (k % 2) == 0;
    const Policy& x = a_is_x ? *a.x : *b.x;
    const Policy& y = a_is_x ? *b.y : *a.y;
    const Trajectory traj = env.Rollout(x, y, rng, 1.0);
    const double f = traj.DiscountedReturn();
    const int outcome = traj.Outcome();  // +1: y seat won
    if (outcome == 0) {
      ++rec.draws;
    } else if ((outcome > 0) != a_is_x) {
      ++rec.wins_a;
    } else {
      ++rec.wins_b;
    }
    if (a_is_x) {
      sum_ab += f;
      ++rec.matches_ab;
    } else {
      sum_ba += f;
      ++rec.matches_ba;
    }
  }
  rec.mean_f_ab = rec.matches_ab > 0 ? sum_ab / rec.matches_ab : 0.0;
  rec.mean_f_ba = rec.matches_ba > 0 ? sum_ba / rec.matches_ba : 0.0;
  return rec;
}

MatchResults RunTournament(const Environment& env,
                           const std::vector<Contestant>& contestants,
                           int64_t matches_per_pair, uint64_t seed,
                           int threads) {
  if (matches_per_pair <= 0) {
    throw std::invalid_argument("matches_per_pair must be positive");
  }
  for (const Contestant& c : contestants) {
    if (c.env_id != env.id()) {
      throw std::invalid_argument("contestant '" + c.id +
                                  "' was trained on '" + c.env_id +
                                  "', not '" + std::string(env.id()) + "'");
    }
    if (!c.x || !c.y) {
      throw std::invalid_argument("contestant '" + c.id + "' lacks a policy");
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < contestants.size(); ++i) {
    for (std::size_t j = i + 1; j < contestants.size(); ++j) {
      pairs.emplace_back(i, j);
    }
  }
  MatchResults results;
  results.matches_per_pair = matches_per_pair;
  results.records.resize(pairs.size());
  ParallelFor(pairs.size(), threads, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    Rng rng = Rng::Derive(seed, {Tag(StreamTag::kTournament), i, j});
    results.records[p] =
        PlayPairing(env, contestants[i], contestants[j], matches_per_pair, rng);
  });
  return results;
}

std::string MatchResultsToJson(const MatchResults& results) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const MatchRecord& r : results.records) {
    nlohmann::ordered_json j;
    j["agent_a"] = r.agent_a;
    j["agent_b"] = r.agent_b;
    j["wins_a"] = r.wins_a;
    j["wins_b"] = r.wins_b;
    j["draws"] = r.draws;
    j["matches"] = r.matches();
    j["mean_f_ab"] = r.mean_f_ab;
    j["mean_f_ba"] = r.mean_f_ba;
    j["matches_ab"] = r.matches_ab;
    j["matches_ba"] = r.matches_ba;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

MatchResults MatchResultsFromJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("results: ") + e.what());
  }
  if (!doc.is_array()) {
    throw std::invalid_argument("results: expected a JSON array of records");
  }
  MatchResults out;
  try {
    for (const auto& j : doc) {
      MatchRecord r;
      r.agent_a = j.at("agent_a").get<std::string>();
      r.agent_b = j.at("agent_b").get<std::string>();
      r.wins_a = j.at("wins_a").get<int64_t>();
      r.wins_b = j.at("wins_b").get<int64_t>();
      r.draws = j.at("draws").get<int64_t>();
      r.mean_f_ab = j.value("mean_f_ab", 0.0);
      r.mean_f_ba = j.value("mean_f_ba", 0.0);
      r.matches_ab = j.value("matches_ab", int64_t{0});
      r.matches_ba = j.value("matches_ba", int64_t{0});
      if (r.wins_a < 0 || r.wins_b < 0 || r.draws < 0) {
        throw std::invalid_argument("results: negative counts");
      }
      if (j.contains("matches") && j["matches"].get<int64_t>() != r.matches()) {
        throw std::invalid_argument("results: wins and draws do not add up");
      }
      out.matches_per_pair = std::max(out.matches_per_pair, r.matches());
      out.records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("results: ") + e.what());
  }
  return out;
}

std::vector<WinRateCell> WinRateTables(
    const MatchResults& results,
    const std::map<std::string, std::string>& groups, WinRateKind kind) {
  struct Acc {
    double sum = 0.0;
    double sum_sq = 0.0;
    int64_t n = 0;
  };
  std::map<std::pair<std::string, std::string>, Acc> cells;
  auto add = [&](const std::string& row, const std::string& col, double w) {
    Acc& acc = cells[{row, col}];
    acc.sum += w;
    acc.sum_sq += w * w;
    ++acc.n;
  };
  for (const MatchRecord& r : results.records) {
    const auto ga = groups.find(r.agent_a);
    const auto gb = groups.find(r.agent_b);
    if (ga == groups.end() || gb == groups.end()) continue;
    if (kind == WinRateKind::kSymmetric) {
      const double diff = r.mean_f_ab - r.mean_f_ba;
      add(ga->second, gb->second, diff / 2.0 * 0.5 + 0.5);   // row a, col b
      add(gb->second, ga->second, -diff / 2.0 * 0.5 + 0.5);  // row b, col a
    } else {
      add(ga->second, gb->second, r.mean_f_ab * 0.5 + 0.5);
      add(gb->second, ga->second, r.mean_f_ba * 0.5 + 0.5);
    }
  }
  std::vector<WinRateCell> out;
  for (const auto& [key, acc] : cells) {
    WinRateCell c;
    c.row_group = key.first;
    c.col_group = key.second;
    c.count = acc.n;
    c.mean = acc.sum / acc.n;
    if (acc.n > 1) {
      const double var =
          std::max(0.0, (acc.sum_sq - acc.n * c.mean * c.mean) / (acc.n - 1));
      c.ci95 = 1.96 * std::sqrt(var / acc.n);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace selfplay
