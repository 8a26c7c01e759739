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

// Command-line front end: train, tournament, elo, nash, export-curves.

#include <glob.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selfplay/evaluation/elo.h"
#include "selfplay/evaluation/nash.h"
#include "selfplay/evaluation/tournament.h"
#include "selfplay/experiment/config.h"
#include "selfplay/experiment/runner.h"
#include "selfplay/games/registry.h"
#include "selfplay/selfplay/checkpoint.h"

namespace fs = std::filesystem;
using namespace selfplay;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

// Errors in user-supplied inputs other than the experiment config.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::vector<std::string> ExpandGlob(const std::string& pattern) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> out;
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw InputError("glob failed: " + pattern);
  return out;
}

std::string FormatVector(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += FormatDouble(v[i]);
  }
  return out + ")";
}

struct TrainArgs {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<std::string> output;
  std::optional<int> threads;
};

int CmdTrain(const TrainArgs& a) {
  ExperimentConfig config = LoadExperimentConfig(a.config);
  RunOverrides o{a.seed, a.output, a.threads};
  const RunSummary s = RunExperiment(std::move(config), o);
  if (s.theory) {
    std::cout << "theory run: " << s.theory->records.size() << " steps, "
              << (s.theory->stopped ? "stopped" : "not stopped") << "\n";
  } else {
    std::cout << "trained " << s.train.iterations_completed
              << " iterations; artifacts in " << s.output_dir.string() << "\n";
  }
  return kExitOk;
}

struct TournamentArgs {
  std::vector<std::string> patterns;
  std::vector<std::string> builtins;
  int64_t matches = 100;
  uint64_t seed = 0;
  int threads = 0;
  int soccer_time_limit = SoccerConfig{}.time_limit;
  std::string output = "results.json";
};

int CmdTournament(const TournamentArgs& a) {
  std::vector<std::string> files;
  for (const auto& p : a.patterns) {
    const auto matched = ExpandGlob(p);
    if (matched.empty()) throw InputError("no checkpoints match '" + p + "'");
    files.insert(files.end(), matched.begin(), matched.end());
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());

  std::vector<Contestant> contestants;
  std::string env_id;
  for (const auto& f : files) {
    Checkpoint c;
    try {
      c = LoadCheckpoint(f);
    } catch (const std::runtime_error& e) {
      throw InputError(f + ": " + e.what());
    }
    if (!env_id.empty() && c.env_id != env_id) {
      throw InputError("checkpoints mix environments '" + env_id + "' and '" +
                       c.env_id + "'");
    }
    env_id = c.env_id;
    contestants.push_back(Contestant{
        c.method + "-s" + std::to_string(c.seed) + "-a" +
            std::to_string(c.agent) + "-k" + std::to_string(c.iteration),
        c.env_id, PolicyFromCheckpoint(c, Side::kX),
        PolicyFromCheckpoint(c, Side::kY)});
  }
  if (env_id.empty()) env_id = "soccer";

  EnvironmentOptions opts;
  opts.soccer.time_limit = a.soccer_time_limit;
  const auto env = MakeEnvironment(env_id, opts);
  for (const auto& b : a.builtins) {
    if (b == "random") {
      const int obs = env->num_observations();
      contestants.push_back(Contestant{
          "random", env_id,
          std::make_shared<UniformPolicy>(env->num_actions(Side::kX), obs),
          std::make_shared<UniformPolicy>(env->num_actions(Side::kY), obs)});
    } else if (b == "rule") {
      if (env_id != "soccer") throw InputError("rule agent exists for soccer only");
      contestants.push_back(Contestant{
          "rule", env_id,
          std::make_shared<SoccerRulePolicy>(Side::kX, opts.soccer),
          std::make_shared<SoccerRulePolicy>(Side::kY, opts.soccer)});
    } else {
      throw InputError("unknown builtin '" + b + "' (expected rule or random)");
    }
  }
  if (contestants.size() < 2) throw InputError("need at least two contestants");
  const MatchResults r =
      RunTournament(*env, contestants, a.matches, a.seed, a.threads);
  WriteText(a.output, MatchResultsToJson(r));
  std::cout << contestants.size() << " contestants, " << r.records.size()
            << " pairings -> " << a.output << "\n";
  return kExitOk;
}

int CmdElo(const std::string& results, const std::string& anchor,
           const std::string& output) {
  MatchResults r;
  try {
    r = MatchResultsFromJson(ReadText(results));
  } catch (const std::invalid_argument& e) {
    throw InputError(results + ": " + e.what());
  }
  if (r.records.empty()) throw InputError(results + ": no match records");
  const EloTable t = FitElo(r, anchor);
  for (const auto& w : t.warnings) std::cerr << "warning: " << w << "\n";
  const std::string json = EloTableToJson(t);
  if (output.empty()) {
    std::cout << json;
  } else {
    WriteText(output, json);
  }
  return kExitOk;
}

int CmdNash(const std::string& game_id, const std::string& orientation) {
  PayoffOrientation o = PayoffOrientation::kTable;
  if (orientation == "caption") {
    o = PayoffOrientation::kCaption;
  } else if (orientation != "table") {
    throw InputError("orientation must be table or caption");
  }
  if (!IsMatrixGameId(game_id)) {
    throw InputError("'" + game_id + "' is not a matrix game");
  }
  const MatrixGame game = MakeMatrixGame(game_id, o);
  const NashSolution s = SolveNash(game);
  std::cout << "game: " << game_id << "\n"
            << "x: " << FormatVector(s.x) << "\n"
            << "y: " << FormatVector(s.y) << "\n"
            << "value (player 1): " << FormatDouble(-s.value + 0.0) << "\n"
            << "value (player 2): " << FormatDouble(s.value) << "\n"
            << "exact: " << (s.exact ? "true" : "false") << "\n";
  if (s.extreme_y.size() > 1 || s.extreme_x.size() > 1) {
    for (const auto& p : s.extreme_x) {
      std::cout << "extreme x: " << FormatVector(p) << "\n";
    }
    for (const auto& p : s.extreme_y) {
      std::cout << "extreme y: " << FormatVector(p) << "\n";
    }
  }
  return kExitOk;
}

int CmdExportCurves(const std::vector<std::string>& runs,
                    const std::string& output) {
  std::vector<fs::path> dirs(runs.begin(), runs.end());
  const std::string csv = ExportCurves(dirs);
  if (output.empty()) {
    std::cout << csv;
  } else {
    WriteText(output, csv);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population-based self-play for two-player zero-sum games"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Run one experiment from a config");
  t->add_option("--config", train.config, "YAML experiment config")->required();
  t->add_option("--seed", train.seed, "Override the config seed");
  t->add_option("--output", train.output, "Override output_dir");
  t->add_option("--threads", train.threads, "Override threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);

  TournamentArgs tour;
  auto* tr = app.add_subcommand("tournament", "Round-robin between checkpoints");
  tr->add_option("--checkpoints", tour.patterns, "Checkpoint glob(s)");
  tr->add_option("--builtin", tour.builtins, "Extra agents: rule, random");
  tr->add_option("--matches", tour.matches, "Matches per pairing")
      ->check(CLI::PositiveNumber);
  tr->add_option("--seed", tour.seed, "Tournament seed");
  tr->add_option("--threads", tour.threads, "Worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  tr->add_option("--soccer-time-limit", tour.soccer_time_limit,
                 "Soccer time limit T")
      ->check(CLI::PositiveNumber);
  tr->add_option("--output", tour.output, "Results JSON path");

  std::string elo_results, elo_anchor, elo_output;
  auto* el = app.add_subcommand("elo", "Fit Elo ratings to tournament results");
  el->add_option("--results", elo_results, "Results JSON")->required();
  el->add_option("--anchor", elo_anchor, "Agent pinned at rating 0")->required();
  el->add_option("--output", elo_output, "Ratings JSON path (default stdout)");

  std::string nash_game, nash_orientation = "table";
  auto* na = app.add_subcommand("nash", "Solve a matrix game exactly");
  na->add_option("--game", nash_game, "Matrix game id")->required();
  na->add_option("--orientation", nash_orientation, "table or caption");

  std::vector<std::string> curve_runs;
  std::string curve_output;
  auto* ec = app.add_subcommand("export-curves",
                                "Aggregate metrics.csv files per iteration");
  ec->add_option("--runs", curve_runs, "Run directories")->required();
  ec->add_option("--output", curve_output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*t) return CmdTrain(train);
    if (*tr) return CmdTournament(tour);
    if (*el) return CmdElo(elo_results, elo_anchor, elo_output);
    if (*na) return CmdNash(nash_game, nash_orientation);
    if (*ec) return CmdExportCurves(curve_runs, curve_output);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
