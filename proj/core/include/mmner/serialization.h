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

#ifndef MMNER_SERIALIZATION_H_
#define MMNER_SERIALIZATION_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mmner/features.h"
#include "mmner/model.h"
#include "mmner/tag_scheme.h"
#include "mmner/training.h"

namespace mmner {

inline constexpr char kModelMagic[8] = {'M', 'M', 'N', 'E', 'R', 'M', 'D', 'L'};
inline constexpr std::uint32_t kModelFormatVersion = 1;

// Everything needed to decode with a trained model.
struct ModelBundle {
  TagScheme scheme;
  Featurizer featurizer;
  ModelDims dims;
  TrainConfig config;
  ModelParams params;
};

// Binary model file; the byte layout is documented in docs/model_format.md.
void SaveModel(const ModelBundle& bundle, std::ostream& out);
// Writes through a temporary file and renames it into place, so a failed
// write never leaves a partial model at `path`.
void SaveModel(const ModelBundle& bundle, const std::string& path);

// Throws ModelFileError with a code distinguishing bad magic, truncation,
// unsupported versions and shape inconsistencies.
ModelBundle LoadModel(std::istream& in);
ModelBundle LoadModel(const std::string& path);

}  // namespace mmner

#endif  // MMNER_SERIALIZATION_H_
