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

#ifndef SELFPLAY_EVALUATION_TOURNAMENT_H_
#define SELFPLAY_EVALUATION_TOURNAMENT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "selfplay/games/environment.h"
#include "selfplay/policies/policy.h"

namespace selfplay {

// An agent is a pair of policies, one for each seat.
struct Contestant {
  std::string id;
  std::string env_id;
  std::shared_ptr<const Policy> x;
  std::shared_ptr<const Policy> y;
};

struct MatchRecord {
  std::string agent_a;
  std::string agent_b;
  int64_t wins_a = 0;
  int64_t wins_b = 0;
  int64_t draws = 0;
  // Mean Player-2 return with a seated as x (f(x_a, y_b)) and with b seated
  // as x (f(x_b, y_a)), and the number of matches behind each.
  double mean_f_ab = 0.0;
  double mean_f_ba = 0.0;
  int64_t matches_ab = 0;
  int64_t matches_ba = 0;

  int64_t matches() const { return wins_a + wins_b + draws; }
  // (wins + draws / 2) / matches for agent a.
  double ScoreA() const;
};

struct MatchResults {
  std::vector<MatchRecord> records;
  int64_t matches_per_pair = 0;
};

// Every unordered pair plays `matches_per_pair` episodes, alternating seats
// so each side assignment gets half (a takes x on even-numbered matches).
// Pairs are independent rng streams derived from `seed`, so results do not
// depend on `threads`. Throws std::invalid_argument if contestants come from
// different environments.
MatchResults RunTournament(const Environment& env,
                           const std::vector<Contestant>& contestants,
                           int64_t matches_per_pair, uint64_t seed,
                           int threads = 1);

// Plays a single pairing; exposed for callers that schedule their own pairs.
MatchRecord PlayPairing(const Environment& env, const Contestant& a,
                        const Contestant& b, int64_t matches, Rng& rng);

// JSON array of records.
std::string MatchResultsToJson(const MatchResults& results);
// Throws std::invalid_argument on schema mismatch.
MatchResults MatchResultsFromJson(const std::string& text);

struct WinRateCell {
  std::string row_group;
  std::string col_group;
  double mean = 0.0;
  double ci95 = 0.0;  // normal-approximation half width
  int64_t count = 0;
};

enum class WinRateKind {
  // win(col vs row) = (f(x_row, y_col) - f(x_col, y_row)) / 2 * 0.5 + 0.5
  kSymmetric,
  // win(y_col vs x_row) = f(x_row, y_col) * 0.5 + 0.5
  kOneSided,
};

// Averages the per-pairing win-rates of each (row group, col group) cell.
// Agents missing from `groups` are ignored.
std::vector<WinRateCell> WinRateTables(
    const MatchResults& results,
    const std::map<std::string, std::string>& groups, WinRateKind kind);

}  // namespace selfplay

#endif  // SELFPLAY_EVALUATION_TOURNAMENT_H_
