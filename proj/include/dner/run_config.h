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

// Run configuration: "key = value" lines with '#' comments.

#ifndef DNER_RUN_CONFIG_H_
#define DNER_RUN_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "dner/neural/scorer.h"

namespace dner {

struct RunConfig {
  ScorerConfig scorer;
  std::string train;
  std::string dev;
  std::string test;
  std::string train_vectors;
  std::string dev_vectors;
  std::string test_vectors;
  std::string checkpoint;
  std::string report;
  // Keep continuous predictions in the disc-only precision denominator.
  bool disc_only_count_continuous = false;

  // Throws Error for unknown keys or unparsable values.
  void Set(const std::string &key, const std::string &value);

  // Every key with its resolved value, one "key = value" per line.
  std::string Resolved() const;

  static const std::vector<std::string> &Keys();
};

// Applies the lines of text on top of base. Errors carry the line number.
RunConfig ParseRunConfig(std::string_view text, RunConfig base = {});

}  // namespace dner

#endif  // DNER_RUN_CONFIG_H_
