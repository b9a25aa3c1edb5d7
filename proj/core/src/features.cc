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

#include "mmner/features.h"

#include "mmner/error.h"

namespace mmner {
namespace {

char SegTag(const Sentence& sentence, int t) {
  // Unsegmented input is read as one-character words.
  return sentence.has_segmentation() ? sentence.seg_tags[t] : 'S';
}

std::vector<std::string> BigramItems(std::span<const Sentence> sentences) {
  std::vector<std::string> items;
  for (const auto& sentence : sentences) {
    for (int t = 0; t < sentence.size(); ++t) {
      for (auto& bigram : ExtractBigramFeatures(sentence.tokens, t)) {
        items.push_back(std::move(bigram));
      }
    }
  }
  return items;
}

}  // namespace

std::string_view RepresentationName(Representation mode) {
  return mode == Representation::kPositional ? "positional" : "segfeat";
}

Representation ParseRepresentation(std::string_view name) {
  if (name == "positional") return Representation::kPositional;
  if (name == "segfeat") return Representation::kSegFeatures;
  throw InputError("unknown representation mode: " + std::string(name) +
                   " (expected positional or segfeat)");
}

Featurizer::Featurizer(FeatureConfig config, Vocab tokens, Vocab bigrams)
    : config_(config), tokens_(std::move(tokens)), bigrams_(std::move(bigrams)) {
  if (config_.window < 1 || config_.window % 2 == 0) {
    throw InputError("window must be a positive odd number");
  }
}

Featurizer Featurizer::Fit(const FeatureConfig& config, std::span<const Sentence> sentences,
                           int min_count) {
  Featurizer featurizer(config, Vocab(), Vocab());
  std::vector<std::string> keys;
  for (const auto& sentence : sentences) {
    for (int t = 0; t < sentence.size(); ++t) keys.push_back(featurizer.TokenKey(sentence, t));
  }
  featurizer.tokens_ = BuildVocab(keys, min_count);
  if (config.bigrams) featurizer.bigrams_ = BuildVocab(BigramItems(sentences), min_count);
  return featurizer;
}

const Vocab& Featurizer::SegVocab() {
  static const Vocab vocab = [] {
    Vocab v;
    for (char tag : kPositionTags) v.Add(std::string(1, tag));
    return v;
  }();
  return vocab;
}

void Featurizer::ExtendTokenVocab(std::span<const std::string> words) {
  for (const auto& word : words) tokens_.Add(word);
}

std::string Featurizer::TokenKey(const Sentence& sentence, int t) const {
  if (config_.mode == Representation::kPositional) {
    std::string key = sentence.tokens[t];
    key.push_back('#');
    key.push_back(SegTag(sentence, t));
    return key;
  }
  return sentence.tokens[t];
}

EncodedSentence Featurizer::Encode(const Sentence& sentence) const {
  if (sentence.has_segmentation() &&
      static_cast<int>(sentence.seg_tags.size()) != sentence.size()) {
    throw ShapeError("segmentation tags do not cover every token");
  }
  EncodedSentence encoded;
  const int n = sentence.size();
  encoded.tokens.reserve(n);
  encoded.features.resize(n);
  for (int t = 0; t < n; ++t) {
    encoded.tokens.push_back(tokens_.Lookup(TokenKey(sentence, t)));
    auto& slots = encoded.features[t];
    if (config_.bigrams) {
      for (const auto& bigram : ExtractBigramFeatures(sentence.tokens, t)) {
        slots.push_back(bigrams_.Lookup(bigram));
      }
    }
    if (config_.mode == Representation::kSegFeatures) {
      slots.push_back(SegVocab().Lookup(std::string(1, SegTag(sentence, t))));
    }
  }
  return encoded;
}

int Featurizer::num_slots() const {
  return (config_.bigrams ? 5 : 0) + (config_.mode == Representation::kSegFeatures ? 1 : 0);
}

std::vector<int> Featurizer::slot_tables() const {
  std::vector<int> tables;
  if (config_.bigrams) tables.assign(5, 0);
  if (config_.mode == Representation::kSegFeatures) tables.push_back(config_.bigrams ? 1 : 0);
  return tables;
}

std::vector<int> Featurizer::feature_table_sizes() const {
  std::vector<int> sizes;
  if (config_.bigrams) sizes.push_back(bigrams_.size());
  if (config_.mode == Representation::kSegFeatures) sizes.push_back(SegVocab().size());
  return sizes;
}

std::vector<std::string> Featurizer::feature_table_names() const {
  std::vector<std::string> names;
  if (config_.bigrams) names.push_back("bigram");
  if (config_.mode == Representation::kSegFeatures) names.push_back("seg");
  return names;
}

}  // namespace mmner
