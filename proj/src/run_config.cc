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

#include "dner/run_config.h"

#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "dner/error.h"
#include "dner/text.h"

namespace dner {

namespace {

int ParseInt(const std::string &key, const std::string &v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw Error(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

uint64_t ParseU64(const std::string &key, const std::string &v) {
  uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw Error(key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

double ParseDouble(const std::string &key, const std::string &v) {
  char *end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw Error(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

bool ParseBool(const std::string &key, const std::string &v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error(key + ": expected true or false, got '" + v + "'");
}

std::string Real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string> &RunConfig::Keys() {
  static const std::vector<std::string> keys = {
      "word_dim",      "char_dim",         "char_cnn_window",
      "char_filters",  "hidden_dim",       "stack_dim",
      "action_dim",    "attention",        "buffer_front",
      "external_vec_dim", "learning_rate", "clip_norm",
      "epochs",        "seed",             "budget_multiplier",
      "train",         "dev",              "test",
      "train_vectors", "dev_vectors",      "test_vectors",
      "checkpoint",    "report",           "disc_only_count_continuous"};
  return keys;
}

void RunConfig::Set(const std::string &key, const std::string &value) {
  ScorerConfig &s = scorer;
  if (key == "word_dim") s.word_dim = ParseInt(key, value);
  else if (key == "char_dim") s.char_dim = ParseInt(key, value);
  else if (key == "char_cnn_window") s.char_cnn_window = ParseInt(key, value);
  else if (key == "char_filters") s.char_filters = ParseInt(key, value);
  else if (key == "hidden_dim") s.hidden_dim = ParseInt(key, value);
  else if (key == "stack_dim") s.stack_dim = ParseInt(key, value);
  else if (key == "action_dim") s.action_dim = ParseInt(key, value);
  else if (key == "attention") s.attention = ParseBool(key, value);
  else if (key == "buffer_front") s.buffer_front = ParseBool(key, value);
  else if (key == "external_vec_dim") s.external_vec_dim = ParseInt(key, value);
  else if (key == "learning_rate") s.learning_rate = ParseDouble(key, value);
  else if (key == "clip_norm") s.clip_norm = ParseDouble(key, value);
  else if (key == "epochs") s.epochs = ParseInt(key, value);
  else if (key == "seed") s.seed = ParseU64(key, value);
  else if (key == "budget_multiplier") s.budget_multiplier = ParseInt(key, value);
  else if (key == "train") train = value;
  else if (key == "dev") dev = value;
  else if (key == "test") test = value;
  else if (key == "train_vectors") train_vectors = value;
  else if (key == "dev_vectors") dev_vectors = value;
  else if (key == "test_vectors") test_vectors = value;
  else if (key == "checkpoint") checkpoint = value;
  else if (key == "report") report = value;
  else if (key == "disc_only_count_continuous") {
    disc_only_count_continuous = ParseBool(key, value);
  } else {
    throw Error("unknown config key '" + key + "'");
  }
}

std::string RunConfig::Resolved() const {
  const ScorerConfig &s = scorer;
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  const std::vector<std::pair<std::string, std::string>> kv = {
      {"word_dim", std::to_string(s.word_dim)},
      {"char_dim", std::to_string(s.char_dim)},
      {"char_cnn_window", std::to_string(s.char_cnn_window)},
      {"char_filters", std::to_string(s.char_filters)},
      {"hidden_dim", std::to_string(s.hidden_dim)},
      {"stack_dim", std::to_string(s.stack_dim)},
      {"action_dim", std::to_string(s.action_dim)},
      {"attention", b(s.attention)},
      {"buffer_front", b(s.buffer_front)},
      {"external_vec_dim", std::to_string(s.external_vec_dim)},
      {"learning_rate", Real(s.learning_rate)},
      {"clip_norm", Real(s.clip_norm)},
      {"epochs", std::to_string(s.epochs)},
      {"seed", std::to_string(s.seed)},
      {"budget_multiplier", std::to_string(s.budget_multiplier)},
      {"train", train},
      {"dev", dev},
      {"test", test},
      {"train_vectors", train_vectors},
      {"dev_vectors", dev_vectors},
      {"test_vectors", test_vectors},
      {"checkpoint", checkpoint},
      {"report", report},
      {"disc_only_count_continuous", b(disc_only_count_continuous)},
  };
  std::string out;
  for (const auto &[k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

RunConfig ParseRunConfig(std::string_view text, RunConfig base) {
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    try {
      base.Set(key, value);
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return base;
}

}  // namespace dner
