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

#include "support/fixtures.h"

#include "mmner/random.h"
#include "support/synthetic.h"

namespace mmner::testing {

std::vector<LabeledInstance> EncodeAll(const Featurizer& featurizer,
                                       const std::vector<Sentence>& sentences) {
  std::vector<LabeledInstance> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back({featurizer.Encode(s), *s.gold_labels});
  return out;
}

Setup MakeSetup(int num_sentences, const FeatureConfig& features, const ModelDims& dims,
                std::uint64_t seed) {
  auto sentences = MakeSyntheticCorpus(num_sentences, seed);
  Featurizer featurizer = Featurizer::Fit(features, sentences, 1);
  Rng rng(seed);
  TagScheme scheme = TagScheme::Default();
  ModelParams params = ModelParams::Initialize(featurizer, scheme, dims, rng);
  auto instances = EncodeAll(featurizer, sentences);
  return Setup{scheme, std::move(sentences), std::move(featurizer), dims, std::move(params),
               std::move(instances)};
}

}  // namespace mmner::testing
