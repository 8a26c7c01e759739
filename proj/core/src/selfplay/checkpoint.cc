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

#include "selfplay/selfplay/checkpoint.h"

#include <bit>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "selfplay/policies/simplex_policy.h"
#include "selfplay/policies/tabular_softmax_policy.h"

namespace selfplay {
namespace {

constexpr std::string_view kMagic("SPCKPT\x01\x00", 8);
constexpr uint32_t kVersion = 1;

class Writer {
 public:
  void U64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void U32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Str(const std::string& s) {
    U32(static_cast<uint32_t>(s.size()));
    out_ += s;
  }
  void Vec(const std::vector<double>& v) {
    U64(v.size());
    for (double d : v) F64(d);
  }
  void Raw(std::string_view s) { out_ += s; }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}
  void Need(std::size_t n) const {
    if (pos_ + n > in_.size()) throw std::runtime_error("checkpoint truncated");
  }
  uint64_t U64() {
    Need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(in_[pos_++]))
           << (8 * i);
    }
    return v;
  }
  uint32_t U32() {
    Need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<uint32_t>(static_cast<unsigned char>(in_[pos_++]))
           << (8 * i);
    }
    return v;
  }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Str() {
    const uint32_t n = U32();
    Need(n);
    std::string s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::vector<double> Vec() {
    const uint64_t n = U64();
    if (n > (in_.size() - pos_) / 8) throw std::runtime_error("checkpoint truncated");
    std::vector<double> v(n);
    for (auto& d : v) d = F64();
    return v;
  }
  std::string_view Raw(std::size_t n) {
    Need(n);
    std::string_view s(in_.data() + pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  const std::string& in_;
  std::size_t pos_ = 0;
};

std::vector<double> Params(const Policy& p, PolicyKind& kind) {
  if (const auto* s = dynamic_cast<const SimplexPolicy*>(&p)) {
    kind = PolicyKind::kSimplex;
    return s->probabilities();
  }
  if (const auto* t = dynamic_cast<const TabularSoftmaxPolicy*>(&p)) {
    kind = PolicyKind::kTabularSoftmax;
    return {t->logits().begin(), t->logits().end()};
  }
  throw std::invalid_argument("policy type has no checkpoint form");
}

}  // namespace

Checkpoint MakeCheckpoint(const Policy& x, const Policy& y, std::string env_id,
                          std::string method, int64_t iteration, int agent,
                          uint64_t seed) {
  Checkpoint c;
  PolicyKind ky{};
  c.x = Params(x, c.kind);
  c.y = Params(y, ky);
  if (ky != c.kind || x.num_observations() != y.num_observations()) {
    throw std::invalid_argument("checkpoint: x and y policies differ in kind");
  }
  c.env_id = std::move(env_id);
  c.method = std::move(method);
  c.num_observations = x.num_observations();
  c.num_actions_x = x.num_actions();
  c.num_actions_y = y.num_actions();
  c.iteration = iteration;
  c.agent = agent;
  c.seed = seed;
  return c;
}

std::string SerializeCheckpoint(const Checkpoint& c) {
  Writer w;
  w.Raw(kMagic);
  w.U32(kVersion);
  w.U32(static_cast<uint32_t>(c.kind));
  w.Str(c.env_id);
  w.Str(c.method);
  w.U32(static_cast<uint32_t>(c.num_observations));
  w.U32(static_cast<uint32_t>(c.num_actions_x));
  w.U32(static_cast<uint32_t>(c.num_actions_y));
  w.U64(static_cast<uint64_t>(c.iteration));
  w.U32(static_cast<uint32_t>(c.agent));
  w.U64(c.seed);
  w.Vec(c.x);
  w.Vec(c.y);
  return w.Take();
}

Checkpoint DeserializeCheckpoint(const std::string& bytes) {
  Reader r(bytes);
  if (bytes.size() < kMagic.size() || r.Raw(kMagic.size()) != kMagic) {
    throw std::runtime_error("not a selfplay checkpoint (bad magic)");
  }
  if (const uint32_t v = r.U32(); v != kVersion) {
    throw std::runtime_error("unsupported checkpoint version " +
                             std::to_string(v));
  }
  Checkpoint c;
  const uint32_t kind = r.U32();
  if (kind != 1 && kind != 2) {
    throw std::runtime_error("unknown policy kind in checkpoint");
  }
  c.kind = static_cast<PolicyKind>(kind);
  c.env_id = r.Str();
  c.method = r.Str();
  c.num_observations = static_cast<int>(r.U32());
  c.num_actions_x = static_cast<int>(r.U32());
  c.num_actions_y = static_cast<int>(r.U32());
  c.iteration = static_cast<int64_t>(r.U64());
  c.agent = static_cast<int>(r.U32());
  c.seed = r.U64();
  c.x = r.Vec();
  c.y = r.Vec();
  if (!r.done()) throw std::runtime_error("trailing bytes in checkpoint");
  const auto obs = static_cast<std::size_t>(c.num_observations);
  if (c.x.size() != obs * c.num_actions_x ||
      c.y.size() != obs * c.num_actions_y) {
    throw std::runtime_error("checkpoint parameter shape mismatch");
  }
  return c;
}

void SaveCheckpoint(const Checkpoint& c, const std::filesystem::path& path) {
  const std::string bytes = SerializeCheckpoint(c);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in),
                          std::istreambuf_iterator<char>()};
  return DeserializeCheckpoint(bytes);
}

std::unique_ptr<Policy> PolicyFromCheckpoint(const Checkpoint& c, Side side) {
  const std::vector<double>& p = side == Side::kX ? c.x : c.y;
  const int actions = side == Side::kX ? c.num_actions_x : c.num_actions_y;
  if (c.kind == PolicyKind::kSimplex) {
    return std::make_unique<SimplexPolicy>(p);
  }
  return std::make_unique<TabularSoftmaxPolicy>(c.num_observations, actions, p);
}

}  // namespace selfplay
