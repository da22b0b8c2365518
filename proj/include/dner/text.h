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

// Small string helpers shared by the readers and writers.

#ifndef DNER_TEXT_H_
#define DNER_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace dner {

// Splits on every occurrence of sep; empty input yields one empty piece.
std::vector<std::string_view> SplitView(std::string_view s, char sep);

// Splits into lines, dropping a trailing '\r' from each. A final newline does
// not produce an extra empty line.
std::vector<std::string_view> SplitLines(std::string_view s);

std::string_view Trim(std::string_view s);

inline bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Reads a whole file; throws Error when it cannot be opened.
std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view content);

}  // namespace dner

#endif  // DNER_TEXT_H_
