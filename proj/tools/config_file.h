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

#ifndef MMNER_TOOLS_CONFIG_FILE_H_
#define MMNER_TOOLS_CONFIG_FILE_H_

#include <istream>
#include <map>
#include <set>
#include <string>

namespace mmner::cli {

// Flat "key = value" settings. Keys are normalized so that '_' and '-' are
// interchangeable; '#' starts a comment; blank lines are ignored.
using ConfigValues = std::map<std::string, std::string>;

// Throws InputError naming the source and line for malformed lines,
// duplicate keys and keys outside `allowed`.
ConfigValues ParseConfig(std::istream& in, const std::string& source,
                         const std::set<std::string>& allowed);
ConfigValues ReadConfigFile(const std::string& path, const std::set<std::string>& allowed);

}  // namespace mmner::cli

#endif  // MMNER_TOOLS_CONFIG_FILE_H_
