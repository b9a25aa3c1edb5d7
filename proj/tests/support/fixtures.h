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

#ifndef MMNER_TESTS_SUPPORT_FIXTURES_H_
#define MMNER_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <vector>

#include "mmner/corpus.h"
#include "mmner/features.h"
#include "mmner/model.h"
#include "mmner/tag_scheme.h"
#include "mmner/training.h"

namespace mmner::testing {

// A synthetic corpus with its featurizer, a freshly initialized model and
// the encoded training instances.
struct Setup {
  TagScheme scheme = TagScheme::Default();
  std::vector<Sentence> sentences;
  Featurizer featurizer;
  ModelDims dims;
  ModelParams params;
  std::vector<LabeledInstance> instances;
};

Setup MakeSetup(int num_sentences, const FeatureConfig& features, const ModelDims& dims,
                std::uint64_t seed);

std::vector<LabeledInstance> EncodeAll(const Featurizer& featurizer,
                                       const std::vector<Sentence>& sentences);

}  // namespace mmner::testing

#endif  // MMNER_TESTS_SUPPORT_FIXTURES_H_
