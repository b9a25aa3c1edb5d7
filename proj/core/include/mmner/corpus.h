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

#ifndef MMNER_CORPUS_H_
#define MMNER_CORPUS_H_

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mmner/tag_scheme.h"

namespace mmner {

// Within-word position of a character: begin, inside, end, single.
inline constexpr std::string_view kPositionTags = "BIES";

// Boundary symbol used when a feature window runs past the sentence.
inline constexpr std::string_view kBoundarySymbol = "</s>";

struct Sentence {
  std::vector<std::string> tokens;
  // One of B/I/E/S per token, or empty when the input carried no
  // segmentation.
  std::string seg_tags;
  std::optional<std::vector<int>> gold_labels;

  int size() const { return static_cast<int>(tokens.size()); }
  bool has_segmentation() const { return !seg_tags.empty(); }
};

struct ConllParseResult {
  std::vector<Sentence> sentences;
  int repairs = 0;  // I-X labels rewritten to B-X
};

// Reads "<token>\t<label>" lines with blank lines between sentences. The
// label column may be omitted for a whole sentence. Tokens written in
// positional form ("x#B") have the tag split off into seg_tags.
ConllParseResult ParseConll(std::istream& in, const TagScheme& scheme);
ConllParseResult ParseConll(std::string_view text, const TagScheme& scheme);

// Writes tokens with the given labels in the same format ParseConll reads.
// Tokens with segmentation are written back in positional form.
void WriteConll(std::ostream& out, std::span<const Sentence> sentences,
                std::span<const std::vector<int>> labels, const TagScheme& scheme);

// Splits a UTF-8 string into code points (each returned as its byte string).
// Invalid lead bytes are passed through as single bytes.
std::vector<std::string> SplitUtf8(std::string_view text);

// "北京" "你" -> "北#B" "京#E" "你#S". Throws InputError on an empty word.
std::vector<std::string> ApplyPositionalTags(std::span<const std::string> words);

// Builds an unlabeled sentence from pre-segmented words.
Sentence SentenceFromWords(std::span<const std::string> words);

// One sentence per non-empty line, words separated by single spaces.
std::vector<Sentence> ParseSegmentedText(std::istream& in);

// Character-bigram templates around position t: C-2C-1, C-1C0, C0C1, C1C2
// and C-1C1.
std::array<std::string, 5> ExtractBigramFeatures(std::span<const std::string> tokens, int t);

// Dense string index with UNK at 0 and PAD at 1.
class Vocab {
 public:
  static constexpr int kUnk = 0;
  static constexpr int kPad = 1;
  static constexpr std::string_view kUnkSymbol = "<unk>";
  static constexpr std::string_view kPadSymbol = "<pad>";

  Vocab();
  // Rebuilds a vocabulary from its word list, which must start with the
  // UNK and PAD symbols.
  static Vocab FromWords(std::vector<std::string> words);

  int Add(const std::string& word);
  int Lookup(std::string_view word) const;  // kUnk when absent
  bool Contains(std::string_view word) const;
  int size() const { return static_cast<int>(words_.size()); }
  const std::string& word(int index) const { return words_.at(index); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
};

// Indexes every item seen at least min_count times, in order of first
// appearance.
Vocab BuildVocab(std::span<const std::string> items, int min_count);

// Token vocabulary over the surface tokens of a corpus.
Vocab BuildVocab(std::span<const Sentence> sentences, int min_count);

}  // namespace mmner

#endif  // MMNER_CORPUS_H_
