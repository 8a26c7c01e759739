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

#include "selfplay/experiment/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include <yaml-cpp/yaml.h>

namespace selfplay {
namespace {

std::string Describe(const std::string& field, int line,
                     const std::string& message) {
  std::string out = "config";
  if (line > 0) out += ":" + std::to_string(line);
  if (!field.empty()) out += ": field '" + field + "'";
  return out + ": " + message;
}

int LineOf(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

[[noreturn]] void Fail(const std::string& field, const YAML::Node& node,
                       const std::string& message) {
  throw ConfigError(field, LineOf(node), message);
}

template <typename T>
T As(const YAML::Node& node, const std::string& field, const char* what) {
  if (!node.IsScalar()) Fail(field, node, std::string("expected ") + what);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    Fail(field, node, std::string("expected ") + what + ", got '" +
                          node.Scalar() + "'");
  }
}

double AsDouble(const YAML::Node& n, const std::string& f) {
  const double v = As<double>(n, f, "a number");
  if (!std::isfinite(v)) Fail(f, n, "must be finite");
  return v;
}
int64_t AsInt(const YAML::Node& n, const std::string& f) {
  return As<int64_t>(n, f, "an integer");
}
bool AsBool(const YAML::Node& n, const std::string& f) {
  return As<bool>(n, f, "true or false");
}
std::string AsString(const YAML::Node& n, const std::string& f) {
  return As<std::string>(n, f, "a string");
}

std::vector<double> AsVector(const YAML::Node& n, const std::string& f) {
  if (!n.IsSequence()) Fail(f, n, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    out.push_back(AsDouble(n[i], f + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void RejectUnknown(const YAML::Node& map, const std::string& prefix,
                   const std::set<std::string_view>& allowed) {
  for (const auto& kv : map) {
    const std::string key = kv.first.Scalar();
    if (!allowed.contains(key)) {
      Fail(prefix + key, kv.first, "unknown key");
    }
  }
}

void RequireMap(const YAML::Node& n, const std::string& field) {
  if (!n.IsMap()) Fail(field, n, "expected a mapping");
}

void ParseOptimizer(const YAML::Node& node, OptimizerConfig& o) {
  RequireMap(node, "optimizer");
  RejectUnknown(node, "optimizer.",
                {"kind", "lr", "lr_schedule", "max_grad_norm", "alpha"});
  if (const auto k = node["kind"]) {
    const std::string kind = AsString(k, "optimizer.kind");
    if (kind == "sgd") {
      o.kind = OptimizerKind::kSgd;
    } else if (kind == "rmsprop") {
      o.kind = OptimizerKind::kRmsProp;
    } else {
      Fail("optimizer.kind", k, "expected sgd or rmsprop, got '" + kind + "'");
    }
  }
  if (const auto v = node["lr"]) {
    o.lr = AsDouble(v, "optimizer.lr");
    if (!(o.lr > 0.0)) Fail("optimizer.lr", v, "must be > 0");
  }
  if (const auto v = node["lr_schedule"]) {
    try {
      o.schedule = ParseLrSchedule(AsString(v, "optimizer.lr_schedule"));
    } catch (const std::invalid_argument& e) {
      Fail("optimizer.lr_schedule", v, e.what());
    }
  }
  if (const auto v = node["max_grad_norm"]) {
    o.max_grad_norm = AsDouble(v, "optimizer.max_grad_norm");
    if (!(o.max_grad_norm > 0.0)) {
      Fail("optimizer.max_grad_norm", v, "must be > 0");
    }
  }
  if (const auto v = node["alpha"]) {
    o.alpha = AsDouble(v, "optimizer.alpha");
    if (!(o.alpha >= 0.0 && o.alpha < 1.0)) {
      Fail("optimizer.alpha", v, "must be in [0, 1)");
    }
  }
}

void ParseSoccer(const YAML::Node& node, SoccerConfig& s) {
  RequireMap(node, "soccer");
  RejectUnknown(node, "soccer.", {"preset", "time_limit", "goal_rows"});
  if (const auto v = node["preset"]) {
    const std::string preset = AsString(v, "soccer.preset");
    if (preset == "short") {
      s = SoccerConfig::ShortPreset();
    } else if (preset != "default") {
      Fail("soccer.preset", v, "expected default or short");
    }
  }
  if (const auto v = node["time_limit"]) {
    s.time_limit = static_cast<int>(AsInt(v, "soccer.time_limit"));
  }
  if (const auto v = node["goal_rows"]) {
    if (!v.IsSequence()) Fail("soccer.goal_rows", v, "expected a list");
    s.goal_rows.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      s.goal_rows.push_back(static_cast<int>(AsInt(v[i], "soccer.goal_rows")));
    }
  }
  try {
    s.Validate();
  } catch (const std::invalid_argument& e) {
    Fail("soccer", node, e.what());
  }
}

void ParseTheory(const YAML::Node& node, TheoryModeConfig& t) {
  RequireMap(node, "theory");
  RejectUnknown(node, "theory.",
                {"R", "B", "D", "d", "epsilon", "delta", "alpha", "grid_step",
                 "exact", "max_iterations", "x0", "y0"});
  TheoryConfig& b = t.bounds;
  if (const auto v = node["R"]) b.R = AsDouble(v, "theory.R");
  if (const auto v = node["B"]) b.B = AsDouble(v, "theory.B");
  if (const auto v = node["D"]) b.D = AsDouble(v, "theory.D");
  if (const auto v = node["d"]) b.d = static_cast<int>(AsInt(v, "theory.d"));
  if (const auto v = node["epsilon"]) b.epsilon = AsDouble(v, "theory.epsilon");
  if (const auto v = node["delta"]) b.delta = AsDouble(v, "theory.delta");
  if (const auto v = node["alpha"]) b.alpha = AsDouble(v, "theory.alpha");
  if (const auto v = node["grid_step"]) {
    t.grid_step = AsDouble(v, "theory.grid_step");
  }
  if (const auto v = node["exact"]) t.exact = AsBool(v, "theory.exact");
  if (const auto v = node["max_iterations"]) {
    t.max_iterations = static_cast<int>(AsInt(v, "theory.max_iterations"));
  }
  if (const auto v = node["x0"]) t.x0 = AsVector(v, "theory.x0");
  if (const auto v = node["y0"]) t.y0 = AsVector(v, "theory.y0");
  try {
    b.Validate();
  } catch (const std::invalid_argument& e) {
    Fail("theory", node, e.what());
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& field, int line,
                         const std::string& message)
    : std::runtime_error(Describe(field, line, message)),
      field_(field),
      line_(line) {}

void ExperimentConfig::Validate() const {
  auto fail = [](const std::string& f, const std::string& m) {
    throw ConfigError(f, 0, m);
  };
  if (version != kConfigVersion) {
    fail("version", "unsupported version " + std::to_string(version));
  }
  const auto& ids = EnvironmentIds();
  if (std::find(ids.begin(), ids.end(), game) == ids.end()) {
    fail("game", "unknown game id '" + game + "'");
  }
  if (n < 1) fail("n", "must be >= 1");
  if (N < 1) fail("N", "must be >= 1");
  if (l < 1) fail("l", "must be >= 1");
  if (m_k < 1) fail("m_k", "must be >= 1");
  if (eval_m_k < 0) fail("eval_m_k", "must be >= 1");
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("gamma", "must be in (0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda", "must be in [0, 1]");
  if (!(entropy_coef >= 0.0)) fail("entropy_coef", "must be >= 0");
  if (threads < 0) fail("threads", "must be >= 0");
  if (checkpoint_every < 1) fail("checkpoint_every", "must be >= 1");
  if (episode_budget < 0) fail("episode_budget", "must be >= 0");
  if (reuse_eval_rollouts) {
    fail("reuse_eval_rollouts",
         "reusing evaluation rollouts for updates is not supported");
  }
  if (output_dir.empty()) fail("output_dir", "must not be empty");
  const bool matrix = is_matrix_game();
  if (!matrix && mode == GradientMode::kExact) {
    fail("mode", "exact_grad is only valid for matrix games");
  }
  if (theory_mode && !matrix) {
    fail("theory_mode", "theory mode is only valid for matrix games");
  }
  if (optimizer.schedule == LrSchedule::kTheoryAdaptive && !theory_mode) {
    fail("optimizer.lr_schedule", "theory_adaptive requires theory_mode");
  }
  if (matrix && optimizer.kind != OptimizerKind::kSgd) {
    fail("optimizer.kind", "matrix games use projected sgd");
  }
  if (!matrix && optimizer.kind != OptimizerKind::kRmsProp) {
    fail("optimizer.kind", "soccer uses rmsprop");
  }
}

ExperimentConfig ParseExperimentConfig(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
  }
  if (!root.IsMap()) throw ConfigError("", 0, "top level must be a mapping");
  RejectUnknown(root, "",
                {"version", "game", "method", "mode", "orientation", "n", "N",
                 "l", "m_k", "eval_m_k", "optimizer", "gamma", "lambda",
                 "entropy_coef", "T", "soccer", "seed", "threads",
                 "output_dir", "checkpoint_every", "episode_budget",
                 "reuse_eval_rollouts", "theory_mode", "theory"});

  ExperimentConfig c;
  const auto version = root["version"];
  if (!version) throw ConfigError("version", 0, "required key is missing");
  c.version = static_cast<int>(AsInt(version, "version"));
  if (c.version != kConfigVersion) {
    Fail("version", version, "unsupported version " +
                                 std::to_string(c.version));
  }
  const auto game = root["game"];
  if (!game) throw ConfigError("game", 0, "required key is missing");
  c.game = AsString(game, "game");
  const auto& ids = EnvironmentIds();
  if (std::find(ids.begin(), ids.end(), c.game) == ids.end()) {
    Fail("game", game, "unknown game id '" + c.game + "'");
  }
  if (!c.is_matrix_game()) {
    c.optimizer.kind = OptimizerKind::kRmsProp;
    c.optimizer.lr = 0.1;
  }

  if (const auto v = root["method"]) {
    try {
      c.method = ParseMethod(AsString(v, "method"));
    } catch (const std::invalid_argument& e) {
      Fail("method", v, e.what());
    }
  }
  if (const auto v = root["mode"]) {
    const std::string mode = AsString(v, "mode");
    if (mode == "exact_grad") {
      c.mode = GradientMode::kExact;
    } else if (mode == "policy_grad") {
      c.mode = GradientMode::kPolicyGradient;
    } else {
      Fail("mode", v, "expected exact_grad or policy_grad");
    }
    if (c.mode == GradientMode::kExact && !c.is_matrix_game()) {
      Fail("mode", v, "exact_grad is only valid for matrix games");
    }
  }
  if (const auto v = root["orientation"]) {
    const std::string o = AsString(v, "orientation");
    if (o == "table") {
      c.orientation = PayoffOrientation::kTable;
    } else if (o == "caption") {
      c.orientation = PayoffOrientation::kCaption;
    } else {
      Fail("orientation", v, "expected table or caption");
    }
  }
  auto positive_int = [&](const char* key, auto& out) {
    if (const auto v = root[key]) {
      const int64_t x = AsInt(v, key);
      if (x < 1) Fail(key, v, "must be >= 1");
      out = static_cast<std::remove_reference_t<decltype(out)>>(x);
    }
  };
  positive_int("n", c.n);
  positive_int("N", c.N);
  positive_int("l", c.l);
  positive_int("m_k", c.m_k);
  positive_int("eval_m_k", c.eval_m_k);
  positive_int("checkpoint_every", c.checkpoint_every);
  if (const auto v = root["optimizer"]) ParseOptimizer(v, c.optimizer);
  if (const auto v = root["gamma"]) c.gamma = AsDouble(v, "gamma");
  if (const auto v = root["lambda"]) c.lambda = AsDouble(v, "lambda");
  if (const auto v = root["entropy_coef"]) {
    c.entropy_coef = AsDouble(v, "entropy_coef");
  }
  if (const auto v = root["soccer"]) ParseSoccer(v, c.soccer);
  if (const auto v = root["T"]) {
    const int64_t t = AsInt(v, "T");
    if (t < 1) Fail("T", v, "must be >= 1");
    c.soccer.time_limit = static_cast<int>(t);
  }
  if (const auto v = root["seed"]) {
    c.seed = As<uint64_t>(v, "seed", "a non-negative integer");
  }
  if (const auto v = root["threads"]) {
    const int64_t t = AsInt(v, "threads");
    if (t < 0) Fail("threads", v, "must be >= 0");
    c.threads = static_cast<int>(t);
  }
  if (const auto v = root["output_dir"]) c.output_dir = AsString(v, "output_dir");
  if (const auto v = root["episode_budget"]) {
    c.episode_budget = AsInt(v, "episode_budget");
    if (c.episode_budget < 0) Fail("episode_budget", v, "must be >= 0");
  }
  if (const auto v = root["reuse_eval_rollouts"]) {
    c.reuse_eval_rollouts = AsBool(v, "reuse_eval_rollouts");
    if (c.reuse_eval_rollouts) {
      Fail("reuse_eval_rollouts", v,
           "reusing evaluation rollouts for updates is not supported");
    }
  }
  if (const auto v = root["theory_mode"]) {
    c.theory_mode = AsBool(v, "theory_mode");
  }
  if (const auto v = root["theory"]) ParseTheory(v, c.theory);

  c.Validate();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseExperimentConfig(buf.str());
}

namespace {

std::string_view ModeName(GradientMode m) {
  return m == GradientMode::kExact ? "exact_grad" : "policy_grad";
}

}  // namespace

std::string ExperimentConfigToYaml(const ExperimentConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "version" << YAML::Value << c.version;
  out << YAML::Key << "game" << YAML::Value << c.game;
  out << YAML::Key << "method" << YAML::Value << std::string(MethodName(c.method));
  out << YAML::Key << "mode" << YAML::Value << std::string(ModeName(c.mode));
  out << YAML::Key << "orientation" << YAML::Value
      << (c.orientation == PayoffOrientation::kTable ? "table" : "caption");
  out << YAML::Key << "n" << YAML::Value << c.n;
  out << YAML::Key << "N" << YAML::Value << c.N;
  out << YAML::Key << "l" << YAML::Value << c.l;
  out << YAML::Key << "m_k" << YAML::Value << c.m_k;
  out << YAML::Key << "eval_m_k" << YAML::Value << c.evaluation_rollouts();
  out << YAML::Key << "optimizer" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value
      << (c.optimizer.kind == OptimizerKind::kSgd ? "sgd" : "rmsprop");
  out << YAML::Key << "lr" << YAML::Value << c.optimizer.lr;
  out << YAML::Key << "lr_schedule" << YAML::Value
      << std::string(LrScheduleName(c.optimizer.schedule));
  out << YAML::Key << "max_grad_norm" << YAML::Value << c.optimizer.max_grad_norm;
  out << YAML::Key << "alpha" << YAML::Value << c.optimizer.alpha;
  out << YAML::EndMap;
  out << YAML::Key << "gamma" << YAML::Value << c.gamma;
  out << YAML::Key << "lambda" << YAML::Value << c.lambda;
  out << YAML::Key << "entropy_coef" << YAML::Value << c.entropy_coef;
  out << YAML::Key << "soccer" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "time_limit" << YAML::Value << c.soccer.time_limit;
  out << YAML::Key << "goal_rows" << YAML::Value << YAML::Flow
      << c.soccer.goal_rows;
  out << YAML::EndMap;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "threads" << YAML::Value << c.threads;
  out << YAML::Key << "output_dir" << YAML::Value << c.output_dir;
  out << YAML::Key << "checkpoint_every" << YAML::Value << c.checkpoint_every;
  out << YAML::Key << "episode_budget" << YAML::Value << c.episode_budget;
  out << YAML::Key << "reuse_eval_rollouts" << YAML::Value
      << c.reuse_eval_rollouts;
  out << YAML::Key << "theory_mode" << YAML::Value << c.theory_mode;
  out << YAML::Key << "theory" << YAML::Value << YAML::BeginMap;
  const TheoryConfig& b = c.theory.bounds;
  out << YAML::Key << "R" << YAML::Value << b.R;
  out << YAML::Key << "B" << YAML::Value << b.B;
  out << YAML::Key << "D" << YAML::Value << b.D;
  out << YAML::Key << "d" << YAML::Value << b.d;
  out << YAML::Key << "epsilon" << YAML::Value << b.epsilon;
  out << YAML::Key << "delta" << YAML::Value << b.delta;
  out << YAML::Key << "alpha" << YAML::Value << b.alpha;
  out << YAML::Key << "grid_step" << YAML::Value << c.theory.grid_step;
  out << YAML::Key << "exact" << YAML::Value << c.theory.exact;
  out << YAML::Key << "max_iterations" << YAML::Value << c.theory.max_iterations;
  if (c.theory.x0) {
    out << YAML::Key << "x0" << YAML::Value << YAML::Flow << *c.theory.x0;
  }
  if (c.theory.y0) {
    out << YAML::Key << "y0" << YAML::Value << YAML::Flow << *c.theory.y0;
  }
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace selfplay
