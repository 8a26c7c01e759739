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

#include "selfplay/experiment/runner.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <utility>

#include <openssl/evp.h>

#include "json.hpp"
#include "selfplay/evaluation/nash.h"
#include "selfplay/selfplay/checkpoint.h"

namespace selfplay {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string GitBlobHash(std::string_view bytes) {
  const std::string header = "blob " + std::to_string(bytes.size());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw std::runtime_error("EVP_MD_CTX_new failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size() + 1) == 1 &&
                  EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHA-1 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

std::string MetricsToCsv(const std::vector<IterationMetrics>& metrics) {
  std::string out(kMetricsHeader);
  out += '\n';
  for (const IterationMetrics& m : metrics) {
    out += std::to_string(m.iteration) + ',' + std::to_string(m.agent) + ',' +
           std::to_string(m.episodes_per_agent) + ',';
    if (!std::isnan(m.e_hat)) out += FormatDouble(m.e_hat);
    out += ',' + std::to_string(m.opponent_v) + ',' +
           std::to_string(m.opponent_u) + ',' +
           (m.self_selected_x ? "1" : "0") + ',' +
           (m.self_selected_y ? "1" : "0") + ',';
    if (m.distance_to_nash) out += FormatDouble(*m.distance_to_nash);
    out += '\n';
  }
  return out;
}

TrainingSetup MakeTrainingSetup(const ExperimentConfig& c) {
  c.Validate();
  TrainingSetup s;
  s.train.method = c.method;
  s.train.n = c.n;
  s.train.iterations = c.N;
  s.train.inner_updates = c.l;
  s.train.m_k = c.m_k;
  s.train.m_eval = c.evaluation_rollouts();
  s.train.seed = c.seed;
  s.train.threads = c.threads;
  s.train.episode_budget = c.episode_budget;

  if (c.is_matrix_game()) {
    auto game = std::make_shared<const MatrixGame>(
        MakeMatrixGame(c.game, c.orientation));
    s.matrix = game;
    s.env = game;
    SimplexLearnerOptions opts;
    opts.mode = c.mode;
    opts.lr = c.optimizer.lr;
    opts.schedule = c.optimizer.schedule;
    opts.total_iterations = c.N;
    s.factory = [game, opts](Side side, int, Rng& rng) {
      return std::make_unique<SimplexLearner>(
          game, side, SimplexPolicy::RandomDirichlet(game->num_actions(side), rng),
          opts);
    };
    if (c.mode == GradientMode::kExact) {
      s.evaluator = std::make_unique<ExactMatrixEvaluator>(game);
    } else {
      s.evaluator = std::make_unique<MonteCarloEvaluator>(game, 1.0);
    }
    auto eq = std::make_shared<const EquilibriumSet>(*game);
    s.distance = [eq](const Policy& x, const Policy& y) -> std::optional<double> {
      return eq->SquaredDistance(x.ActionDistribution(0),
                                 y.ActionDistribution(0));
    };
  } else {
    EnvironmentOptions env_opts;
    env_opts.soccer = c.soccer;
    auto env = MakeEnvironment(c.game, env_opts);
    s.env = env;
    A2CLearnerOptions opts;
    opts.gamma = c.gamma;
    opts.lambda = c.lambda;
    opts.entropy_coef = c.entropy_coef;
    opts.lr = c.optimizer.lr;
    opts.schedule = c.optimizer.schedule;
    opts.total_iterations = c.N;
    opts.max_grad_norm = c.optimizer.max_grad_norm;
    opts.rmsprop_alpha = c.optimizer.alpha;
    s.factory = [env, opts](Side side, int, Rng&) {
      return std::make_unique<A2CLearner>(env, side, opts);
    };
    s.evaluator = std::make_unique<MonteCarloEvaluator>(env, c.gamma);
  }
  return s;
}

namespace {

void WriteFile(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string CheckpointName(int agent, int k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "agent%d_k%06d.ckpt", agent, k);
  return buf;
}

std::string TheoryToCsv(const TheoryResult& r, int rows, int cols) {
  std::string out = "k,E_hat,u_index,v_index,f_xv,f_xy,f_uy,eta,m_k";
  for (int a = 0; a < rows; ++a) out += ",x_" + std::to_string(a);
  for (int b = 0; b < cols; ++b) out += ",y_" + std::to_string(b);
  out += '\n';
  for (const GapRecord& g : r.records) {
    out += std::to_string(g.k) + ',' + FormatDouble(g.e_hat) + ',' +
           std::to_string(g.u_index) + ',' + std::to_string(g.v_index) + ',' +
           FormatDouble(g.f_xv) + ',' + FormatDouble(g.f_xy) + ',' +
           FormatDouble(g.f_uy) + ',' + FormatDouble(g.eta) + ',' +
           std::to_string(g.m_k);
    for (double p : g.x) out += ',' + FormatDouble(p);
    for (double p : g.y) out += ',' + FormatDouble(p);
    out += '\n';
  }
  return out;
}

TheoryResult RunTheory(const ExperimentConfig& c, const MatrixGame& game) {
  TheoryRunConfig t;
  t.theory = c.theory.bounds;
  t.exact = c.theory.exact;
  t.max_iterations = c.theory.max_iterations;
  t.seed = c.seed;
  t.candidates_x = SimplexGrid(game.rows(), c.theory.grid_step);
  t.candidates_y = SimplexGrid(game.cols(), c.theory.grid_step);
  Rng rx = Rng::Derive(c.seed, {Tag(StreamTag::kInit), 0, 0});
  Rng ry = Rng::Derive(c.seed, {Tag(StreamTag::kInit), 0, 1});
  t.x0 = c.theory.x0 ? *c.theory.x0
                     : SimplexPolicy::RandomDirichlet(game.rows(), rx)
                           .probabilities();
  t.y0 = c.theory.y0 ? *c.theory.y0
                     : SimplexPolicy::RandomDirichlet(game.cols(), ry)
                           .probabilities();
  return TrainSingleTheory(game, t);
}

}  // namespace

RunSummary RunExperiment(ExperimentConfig config,
                         const RunOverrides& overrides) {
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.output_dir) config.output_dir = *overrides.output_dir;
  if (overrides.threads) config.threads = *overrides.threads;
  config.Validate();

  RunSummary summary;
  summary.output_dir = config.output_dir;
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);
  const std::string config_yaml = ExperimentConfigToYaml(config);

  ordered_json manifest;
  manifest["status"] = "running";
  manifest["seed"] = config.seed;
  manifest["config_hash"] = GitBlobHash(config_yaml);
  manifest["config"] = config_yaml;
  manifest["artifacts"] = ordered_json::object();

  try {
    TrainingSetup setup = MakeTrainingSetup(config);
    if (config.theory_mode) {
      summary.theory = RunTheory(config, *setup.matrix);
      const std::string csv = TheoryToCsv(*summary.theory, setup.matrix->rows(),
                                          setup.matrix->cols());
      WriteFile(dir / "theory.csv", csv);
      manifest["artifacts"]["theory.csv"] = GitBlobHash(csv);
      manifest["theory"] = {{"stopped", summary.theory->stopped},
                            {"iterations", summary.theory->records.size()},
                            {"x", summary.theory->x},
                            {"y", summary.theory->y}};
    } else {
      const fs::path ckpt_dir = dir / "checkpoints";
      fs::create_directories(ckpt_dir);
      const std::string env_id(setup.env->id());
      const std::string method(MethodName(config.method));
      std::string phase;
      if (setup.matrix) {
        phase = "k,agent";
        for (int a = 0; a < setup.matrix->rows(); ++a) {
          phase += ",P_x_" + std::to_string(a);
        }
        for (int b = 0; b < setup.matrix->cols(); ++b) {
          phase += ",P_y_" + std::to_string(b);
        }
        phase += '\n';
      }
      TrainCallbacks cb;
      cb.distance = setup.distance;
      cb.checkpoint_every = config.checkpoint_every;
      cb.checkpoint = [&](const AgentSnapshot& snap) {
        const fs::path path = ckpt_dir / CheckpointName(snap.agent, snap.iteration);
        SaveCheckpoint(MakeCheckpoint(*snap.x, *snap.y, env_id, method,
                                      snap.iteration, snap.agent, config.seed),
                       path);
      };
      if (setup.matrix) {
        cb.observe = [&](int k, int agent, const Policy& x, const Policy& y) {
          phase += std::to_string(k) + ',' + std::to_string(agent);
          for (double p : x.ActionDistribution(0)) phase += ',' + FormatDouble(p);
          for (double p : y.ActionDistribution(0)) phase += ',' + FormatDouble(p);
          phase += '\n';
        };
      }
      summary.train = Train(setup.train, setup.factory, *setup.evaluator, cb);
      const int last = summary.train.iterations_completed;
      for (int i = 0; i < config.n; ++i) {
        summary.final_checkpoints.push_back(ckpt_dir / CheckpointName(i, last));
      }
      const std::string csv = MetricsToCsv(summary.train.metrics);
      WriteFile(dir / "metrics.csv", csv);
      manifest["artifacts"]["metrics.csv"] = GitBlobHash(csv);
      if (setup.matrix) {
        WriteFile(dir / "phase.csv", phase);
        manifest["artifacts"]["phase.csv"] = GitBlobHash(phase);
      }
      manifest["iterations_completed"] = last;
      manifest["episodes_per_agent"] = summary.train.episodes_per_agent;
      ordered_json champions = ordered_json::array();
      for (const ChampionEvent& e : summary.train.champion_events) {
        champions.push_back({{"k", e.iteration},
                             {"agent", e.agent},
                             {"previous", e.previous},
                             {"replacement", e.replacement},
                             {"score", e.score}});
      }
      manifest["champion_events"] = champions;
    }
    manifest["status"] = "ok";
    WriteFile(dir / "run_manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    manifest["status"] = "failed";
    manifest["error"] = e.what();
    std::error_code ec;
    if (fs::is_directory(dir, ec)) {
      std::ofstream(dir / "run_manifest.json") << manifest.dump(2) << "\n";
    }
    throw;
  }
  return summary;
}

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> ParseCell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("bad number in metrics.csv: '" + s + "'");
  }
  return v;
}

struct CurvePoint {
  int rows = 0;
  int dist_count = 0;
  double dist_sum = 0.0;
  double dist_sq = 0.0;
  int ehat_count = 0;
  double ehat_sum = 0.0;
  int self_selected = 0;
};

}  // namespace

std::string ExportCurves(const std::vector<fs::path>& run_dirs) {
  if (run_dirs.empty()) throw std::invalid_argument("no run directories");
  std::map<int, CurvePoint> curve;
  for (const fs::path& d : run_dirs) {
    std::ifstream in(d / "metrics.csv");
    if (!in) throw std::runtime_error("cannot read " + (d / "metrics.csv").string());
    std::string line;
    std::getline(in, line);
    if (line != kMetricsHeader) {
      throw std::runtime_error("unexpected metrics.csv header in " + d.string());
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cells = SplitCsv(line);
      if (cells.size() != 9) {
        throw std::runtime_error("malformed metrics.csv row in " + d.string());
      }
      CurvePoint& p = curve[static_cast<int>(*ParseCell(cells[0]))];
      ++p.rows;
      if (auto e = ParseCell(cells[3])) {
        ++p.ehat_count;
        p.ehat_sum += *e;
      }
      p.self_selected += (cells[6] == "1") + (cells[7] == "1");
      if (auto dist = ParseCell(cells[8])) {
        ++p.dist_count;
        p.dist_sum += *dist;
        p.dist_sq += *dist * *dist;
      }
    }
  }
  std::string out =
      "k,rows,mean_distance,ci95_distance,mean_E_hat,self_selection_rate\n";
  for (const auto& [k, p] : curve) {
    out += std::to_string(k) + ',' + std::to_string(p.rows) + ',';
    if (p.dist_count > 0) {
      const double mean = p.dist_sum / p.dist_count;
      const double var =
          p.dist_count > 1
              ? std::max(0.0, (p.dist_sq - p.dist_count * mean * mean) /
                                  (p.dist_count - 1))
              : 0.0;
      out += FormatDouble(mean) + ',' +
             FormatDouble(1.96 * std::sqrt(var / p.dist_count));
    } else {
      out += ',';
    }
    out += ',';
    if (p.ehat_count > 0) out += FormatDouble(p.ehat_sum / p.ehat_count);
    out += ',' + FormatDouble(p.self_selected / (2.0 * p.rows)) + '\n';
  }
  return out;
}

}  // namespace selfplay
