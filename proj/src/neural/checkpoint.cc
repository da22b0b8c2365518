// Copyright 2026 The dner Authors.
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

#include "dner/neural/checkpoint.h"

#include <cstring>

#include <nlohmann/json.hpp>

#include "dner/error.h"
#include "dner/text.h"

namespace dner {

namespace {

using Json = nlohmann::ordered_json;

constexpr char kMagic[4] = {'D', 'N', 'E', 'R'};

void PutU32(std::string &out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU64(std::string &out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutF64(std::string &out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  PutU64(out, bits);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view Take(size_t n) {
    if (bytes_.size() - pos_ < n) throw Error("checkpoint is truncated");
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  uint64_t Unsigned(int width) {
    std::string_view b = Take(width);
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    }
    return v;
  }

  double F64() {
    const uint64_t bits = Unsigned(8);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  size_t pos_ = 0;
};

Json ConfigJson(const ScorerConfig &c) {
  Json j;
  j["word_dim"] = c.word_dim;
  j["char_dim"] = c.char_dim;
  j["char_cnn_window"] = c.char_cnn_window;
  j["char_filters"] = c.char_filters;
  j["hidden_dim"] = c.hidden_dim;
  j["stack_dim"] = c.stack_dim;
  j["action_dim"] = c.action_dim;
  j["attention"] = c.attention;
  j["buffer_front"] = c.buffer_front;
  j["external_vec_dim"] = c.external_vec_dim;
  j["learning_rate"] = c.learning_rate;
  j["clip_norm"] = c.clip_norm;
  j["epochs"] = c.epochs;
  j["seed"] = c.seed;
  j["budget_multiplier"] = c.budget_multiplier;
  return j;
}

ScorerConfig ConfigOf(const Json &j) {
  ScorerConfig c;
  try {
    c.word_dim = j.at("word_dim").get<int>();
    c.char_dim = j.at("char_dim").get<int>();
    c.char_cnn_window = j.at("char_cnn_window").get<int>();
    c.char_filters = j.at("char_filters").get<int>();
    c.hidden_dim = j.at("hidden_dim").get<int>();
    c.stack_dim = j.at("stack_dim").get<int>();
    c.action_dim = j.at("action_dim").get<int>();
    c.attention = j.at("attention").get<bool>();
    c.buffer_front = j.at("buffer_front").get<bool>();
    c.external_vec_dim = j.at("external_vec_dim").get<int>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.clip_norm = j.at("clip_norm").get<double>();
    c.epochs = j.at("epochs").get<int>();
    c.seed = j.at("seed").get<uint64_t>();
    c.budget_multiplier = j.at("budget_multiplier").get<int>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("bad model config: ") + e.what());
  }
  c.Validate();
  return c;
}

}  // namespace

std::string ConfigToJson(const ScorerConfig &config) {
  return ConfigJson(config).dump();
}

ScorerConfig ConfigFromJson(std::string_view json) {
  Json j = Json::parse(json, nullptr, false);
  if (j.is_discarded()) throw Error("model config is not valid JSON");
  return ConfigOf(j);
}

std::string SerializeModel(const Model &model) {
  Json meta;
  meta["config"] = ConfigJson(model.config);
  meta["vocab"] = model.vocab.words();
  meta["types"] = model.types;
  const std::string blob = meta.dump();

  std::string out(kMagic, 4);
  PutU32(out, kCheckpointVersion);
  PutU64(out, blob.size());
  out += blob;
  const Params &p = model.params;
  PutU64(out, p.size());
  for (ParamId id = 0; id < p.size(); ++id) {
    PutU32(out, static_cast<uint32_t>(p.name(id).size()));
    out += p.name(id);
    PutU32(out, 2);
    PutU64(out, p[id].rows());
    PutU64(out, p[id].cols());
    for (int r = 0; r < p[id].rows(); ++r) {
      for (int c = 0; c < p[id].cols(); ++c) PutF64(out, p[id](r, c));
    }
  }
  return out;
}

Model DeserializeModel(std::string_view bytes) {
  Reader in(bytes);
  if (in.Take(4) != std::string_view(kMagic, 4)) {
    throw Error("not a model checkpoint (bad magic)");
  }
  const uint64_t version = in.Unsigned(4);
  if (version != kCheckpointVersion) {
    throw Error("checkpoint version " + std::to_string(version) +
                " is not supported (expected " +
                std::to_string(kCheckpointVersion) + ")");
  }
  const uint64_t blob_size = in.Unsigned(8);
  Json meta = Json::parse(in.Take(blob_size), nullptr, false);
  if (meta.is_discarded() || !meta.is_object()) {
    throw Error("checkpoint metadata is not valid JSON");
  }
  Model m;
  try {
    m.config = ConfigOf(meta.at("config"));
    std::vector<std::string> words = meta.at("vocab").get<std::vector<std::string>>();
    if (words.empty() || words[0] != Vocab::kUnkToken) {
      throw Error("checkpoint vocabulary does not start with the unknown word");
    }
    words.erase(words.begin());
    m.vocab = Vocab(words);
    m.types = meta.at("types").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("bad checkpoint metadata: ") + e.what());
  }
  const uint64_t count = in.Unsigned(8);
  for (uint64_t t = 0; t < count; ++t) {
    const std::string name(in.Take(in.Unsigned(4)));
    const uint64_t ndims = in.Unsigned(4);
    if (ndims != 2) throw Error("tensor " + name + " is not 2-dimensional");
    const uint64_t rows = in.Unsigned(8);
    const uint64_t cols = in.Unsigned(8);
    if (rows > (1u << 24) || cols > (1u << 24)) {
      throw Error("tensor " + name + " is implausibly large");
    }
    const ParamId id = m.params.Add(name, static_cast<int>(rows),
                                    static_cast<int>(cols));
    for (uint64_t r = 0; r < rows; ++r) {
      for (uint64_t c = 0; c < cols; ++c) m.params[id](r, c) = in.F64();
    }
  }
  if (!in.done()) throw Error("trailing bytes after checkpoint");
  m.ids = BindParams(m.config, m.params, m.vocab.size(), m.inventory().size());
  return m;
}

void SaveModel(const Model &model, const std::string &path) {
  WriteFile(path, SerializeModel(model));
}

Model LoadModel(const std::string &path) {
  try {
    return DeserializeModel(ReadFile(path));
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace dner
