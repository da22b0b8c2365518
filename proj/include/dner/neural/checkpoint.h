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

// Binary model checkpoints.
//
//   "DNER"                      magic
//   u32 version
//   u64 length, bytes           JSON metadata: config, vocabulary, types
//   u64 tensor count
//   per tensor:
//     u32 length, bytes         name
//     u32 ndims (always 2)
//     u64 rows, u64 cols
//     f64 values, row-major
//
// All integers and floats are little-endian.

#ifndef DNER_NEURAL_CHECKPOINT_H_
#define DNER_NEURAL_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "dner/neural/scorer.h"

namespace dner {

inline constexpr uint32_t kCheckpointVersion = 1;

std::string SerializeModel(const Model &model);
// Throws Error on a bad magic, a version mismatch or truncated data.
Model DeserializeModel(std::string_view bytes);

void SaveModel(const Model &model, const std::string &path);
Model LoadModel(const std::string &path);

// Config fields as a JSON object string, keys in declaration order.
std::string ConfigToJson(const ScorerConfig &config);
ScorerConfig ConfigFromJson(std::string_view json);

}  // namespace dner

#endif  // DNER_NEURAL_CHECKPOINT_H_
