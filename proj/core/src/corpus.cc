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

#include "mmner/corpus.h"

#include <istream>
#include <ostream>
#include <sstream>

#include "mmner/error.h"

namespace mmner {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool IsPositionalToken(std::string_view token) {
  return token.size() >= 3 && token[token.size() - 2] == '#' &&
         kPositionTags.find(token.back()) != std::string_view::npos;
}

// Converts "x#B"-style tokens when every token in the sentence has that form.
void SplitPositionalTokens(Sentence& sentence) {
  if (sentence.tokens.empty()) return;
  for (const auto& token : sentence.tokens) {
    if (!IsPositionalToken(token)) return;
  }
  sentence.seg_tags.clear();
  for (auto& token : sentence.tokens) {
    sentence.seg_tags.push_back(token.back());
    token.resize(token.size() - 2);
  }
}

struct PendingSentence {
  Sentence sentence;
  std::vector<int> labels;
  int columns = 0;
  int first_line = 0;
};

}  // namespace

ConllParseResult ParseConll(std::istream& in, const TagScheme& scheme) {
  ConllParseResult result;
  PendingSentence pending;

  auto flush = [&] {
    if (pending.sentence.tokens.empty()) return;
    if (pending.columns == 2) {
      result.repairs += RepairBio(pending.labels, scheme);
      pending.sentence.gold_labels = std::move(pending.labels);
    }
    SplitPositionalTokens(pending.sentence);
    result.sentences.push_back(std::move(pending.sentence));
    pending = PendingSentence{};
  };

  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    auto fields = SplitTabs(line);
    const int columns = static_cast<int>(fields.size());
    if (columns > 2 || fields[0].empty()) {
      throw InputError("line " + std::to_string(line_number) +
                       ": expected <token> or <token>\\t<label>");
    }
    if (pending.columns == 0) {
      pending.columns = columns;
      pending.first_line = line_number;
    } else if (pending.columns != columns) {
      throw InputError("line " + std::to_string(line_number) +
                       ": column count differs from the sentence starting at line " +
                       std::to_string(pending.first_line));
    }
    pending.sentence.tokens.emplace_back(fields[0]);
    if (columns == 2) {
      if (!scheme.HasLabel(fields[1])) {
        throw InputError("line " + std::to_string(line_number) + ": unknown label '" +
                         std::string(fields[1]) + "'");
      }
      pending.labels.push_back(scheme.LabelIndex(fields[1]));
    }
  }
  flush();
  return result;
}

ConllParseResult ParseConll(std::string_view text, const TagScheme& scheme) {
  std::istringstream in{std::string(text)};
  return ParseConll(in, scheme);
}

void WriteConll(std::ostream& out, std::span<const Sentence> sentences,
                std::span<const std::vector<int>> labels, const TagScheme& scheme) {
  if (sentences.size() != labels.size()) {
    throw ShapeError("WriteConll: sentence and label counts differ");
  }
  for (size_t i = 0; i < sentences.size(); ++i) {
    const auto& sentence = sentences[i];
    if (static_cast<int>(labels[i].size()) != sentence.size()) {
      throw ShapeError("WriteConll: label sequence length differs from sentence length");
    }
    for (int t = 0; t < sentence.size(); ++t) {
      out << sentence.tokens[t];
      if (sentence.has_segmentation()) out << '#' << sentence.seg_tags[t];
      out << '\t' << scheme.LabelName(labels[i][t]) << '\n';
    }
    out << '\n';
  }
}

std::vector<std::string> SplitUtf8(std::string_view text) {
  std::vector<std::string> chars;
  size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    size_t len = 1;
    if (lead >= 0xF0 && lead < 0xF8) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = lead < 0xF0 ? 3 : 1;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    if (i + len > text.size()) len = 1;
    chars.emplace_back(text.substr(i, len));
    i += len;
  }
  return chars;
}

std::vector<std::string> ApplyPositionalTags(std::span<const std::string> words) {
  std::vector<std::string> out;
  Sentence sentence = SentenceFromWords(words);
  out.reserve(sentence.tokens.size());
  for (int t = 0; t < sentence.size(); ++t) {
    out.push_back(sentence.tokens[t] + "#" + sentence.seg_tags[t]);
  }
  return out;
}

Sentence SentenceFromWords(std::span<const std::string> words) {
  Sentence sentence;
  for (const auto& word : words) {
    if (word.empty()) throw InputError("empty word in segmented input");
    auto chars = SplitUtf8(word);
    const size_t n = chars.size();
    for (size_t i = 0; i < n; ++i) {
      char tag = n == 1 ? 'S' : i == 0 ? 'B' : i + 1 == n ? 'E' : 'I';
      sentence.tokens.push_back(std::move(chars[i]));
      sentence.seg_tags.push_back(tag);
    }
  }
  return sentence;
}

std::vector<Sentence> ParseSegmentedText(std::istream& in) {
  std::vector<Sentence> sentences;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> words;
    size_t start = 0;
    while (start <= line.size()) {
      size_t space = line.find(' ', start);
      if (space == std::string::npos) space = line.size();
      words.push_back(line.substr(start, space - start));
      start = space + 1;
    }
    try {
      sentences.push_back(SentenceFromWords(words));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return sentences;
}

std::array<std::string, 5> ExtractBigramFeatures(std::span<const std::string> tokens, int t) {
  const int n = static_cast<int>(tokens.size());
  auto at = [&](int i) -> std::string_view {
    return i < 0 || i >= n ? kBoundarySymbol : std::string_view(tokens[i]);
  };
  auto cat = [](std::string_view a, std::string_view b) {
    std::string s(a);
    s.append(b);
    return s;
  };
  return {cat(at(t - 2), at(t - 1)), cat(at(t - 1), at(t)), cat(at(t), at(t + 1)),
          cat(at(t + 1), at(t + 2)), cat(at(t - 1), at(t + 1))};
}

Vocab::Vocab() {
  Add(std::string(kUnkSymbol));
  Add(std::string(kPadSymbol));
}

Vocab Vocab::FromWords(std::vector<std::string> words) {
  if (words.size() < 2 || words[0] != kUnkSymbol || words[1] != kPadSymbol) {
    throw InputError("vocabulary must start with the UNK and PAD symbols");
  }
  Vocab vocab;
  for (size_t i = 2; i < words.size(); ++i) {
    if (vocab.Contains(words[i])) throw InputError("duplicate vocabulary entry: " + words[i]);
    vocab.Add(words[i]);
  }
  return vocab;
}

int Vocab::Add(const std::string& word) {
  auto [it, inserted] = index_.emplace(word, size());
  if (inserted) words_.push_back(word);
  return it->second;
}

int Vocab::Lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocab::Contains(std::string_view word) const {
  return index_.contains(std::string(word));
}

Vocab BuildVocab(std::span<const std::string> items, int min_count) {
  if (min_count < 1) throw InputError("min_count must be at least 1");
  std::unordered_map<std::string_view, int> counts;
  std::vector<std::string_view> order;
  for (const auto& item : items) {
    if (counts[item]++ == 0) order.push_back(item);
  }
  Vocab vocab;
  for (auto item : order) {
    if (counts[item] >= min_count) vocab.Add(std::string(item));
  }
  return vocab;
}

Vocab BuildVocab(std::span<const Sentence> sentences, int min_count) {
  std::vector<std::string> tokens;
  for (const auto& sentence : sentences) {
    tokens.insert(tokens.end(), sentence.tokens.begin(), sentence.tokens.end());
  }
  return BuildVocab(tokens, min_count);
}

}  // namespace mmner
