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

#ifndef MMNER_FEATURES_H_
#define MMNER_FEATURES_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmner/corpus.h"
#include "mmner/embeddings.h"

namespace mmner {

// How word segmentation reaches the network.
enum class Representation {
  kPositional,   // tokens are characters tagged with their word position
  kSegFeatures,  // plain characters plus a discrete B/I/E/S feature
};

std::string_view RepresentationName(Representation mode);
Representation ParseRepresentation(std::string_view name);

struct FeatureConfig {
  Representation mode = Representation::kPositional;
  bool bigrams = true;
  int window = 5;
};

// Maps sentences to token and feature ids. Feature tables are numbered
// bigram table first (when enabled), then the segmentation table (segfeat
// mode); the five bigram slots share one table.
class Featurizer {
 public:
  Featurizer(FeatureConfig config, Vocab tokens, Vocab bigrams);

  // Builds the token and bigram vocabularies from a training corpus.
  static Featurizer Fit(const FeatureConfig& config, std::span<const Sentence> sentences,
                        int min_count);

  // Vocabulary of the segmentation feature: UNK, PAD, B, I, E, S.
  static const Vocab& SegVocab();

  const FeatureConfig& config() const { return config_; }
  const Vocab& token_vocab() const { return tokens_; }
  const Vocab& bigram_vocab() const { return bigrams_; }

  // Adds words (e.g. from a pretrained embedding file) to the token vocabulary.
  void ExtendTokenVocab(std::span<const std::string> words);

  // Token string the vocabulary is keyed on at position t.
  std::string TokenKey(const Sentence& sentence, int t) const;
  EncodedSentence Encode(const Sentence& sentence) const;

  int num_slots() const;
  std::vector<int> slot_tables() const;
  // Row counts and names of the feature tables, in table order.
  std::vector<int> feature_table_sizes() const;
  std::vector<std::string> feature_table_names() const;

 private:
  FeatureConfig config_;
  Vocab tokens_;
  Vocab bigrams_;
};

}  // namespace mmner

#endif  // MMNER_FEATURES_H_
