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

#ifndef DNER_CLI_COMMANDS_H_
#define DNER_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace dner::cli {

// Runs the dner command line. Returns the process exit code; failures print
// one "error: ..." line on err.
int Main(const std::vector<std::string> &args, std::ostream &out,
         std::ostream &err);

}  // namespace dner::cli

#endif  // DNER_CLI_COMMANDS_H_
