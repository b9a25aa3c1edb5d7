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

#ifndef MMNER_TESTS_SUPPORT_SYNTHETIC_H_
#define MMNER_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mmner/corpus.h"
#include "mmner/tag_scheme.h"

namespace mmner::testing {

// Segmented, labeled sentences built from a fixed lexicon in which every
// character belongs to exactly one word and every entity word to exactly
// one type, so each token determines its gold label. Uses the default
// scheme (4 categories x named/nominal); every type occurs at least once
// when num_sentences >= 8.
std::vector<Sentence> MakeSyntheticCorpus(int num_sentences, std::uint64_t seed);

// CoNLL text of a corpus, tokens in positional form.
std::string ToConll(const std::vector<Sentence>& sentences, const TagScheme& scheme);

// Gold labels with the last character of every entity relabeled O.
std::vector<int> TruncateEntities(const std::vector<int>& gold, const TagScheme& scheme);

// Writes `contents` to a fresh file under the system temp directory.
std::string WriteTempFile(const std::string& name, const std::string& contents);

std::string ReadFile(const std::string& path);

}  // namespace mmner::testing

#endif  // MMNER_TESTS_SUPPORT_SYNTHETIC_H_
