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

#include "config_file.h"

#include <algorithm>
#include <fstream>

#include "mmner/error.h"

namespace mmner::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ConfigValues ParseConfig(std::istream& in, const std::string& source,
                         const std::set<std::string>& allowed) {
  ConfigValues values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string where = source + ":" + std::to_string(line_number);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(where + ": expected 'key = value'");
    std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw InputError(where + ": empty key");
    if (!allowed.contains(key)) throw InputError(where + ": unknown key '" + key + "'");
    if (!values.emplace(key, value).second) {
      throw InputError(where + ": duplicate key '" + key + "'");
    }
  }
  return values;
}

ConfigValues ReadConfigFile(const std::string& path, const std::set<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  return ParseConfig(in, path, allowed);
}

}  // namespace mmner::cli
