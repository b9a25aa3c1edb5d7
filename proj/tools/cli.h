// Copyright 2026 The mmner Authors.
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

#ifndef MMNER_TOOLS_CLI_H_
#define MMNER_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace mmner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // internal error or failed check
inline constexpr int kExitUsage = 2;    // bad flags, unreadable or malformed input

// Runs the mmner command line with `args` (program name excluded), writing
// results to `out` and diagnostics to `err`. Returns the process exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmner::cli

#endif  // MMNER_TOOLS_CLI_H_
