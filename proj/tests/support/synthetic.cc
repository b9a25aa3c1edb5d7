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

#include "support/synthetic.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mmner/random.h"

namespace mmner::testing {
namespace {

std::string EncodeUtf8(char32_t cp) {
  std::string out;
  out += static_cast<char>(0xE0 | (cp >> 12));
  out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
  out += static_cast<char>(0x80 | (cp & 0x3F));
  return out;
}

struct Lexicon {
  std::vector<std::vector<std::string>> entity_words;  // per type
  std::vector<std::string> filler;
};

Lexicon BuildLexicon(const TagScheme& scheme) {
  Lexicon lex;
  char32_t next = 0x4E00;
  auto word = [&](int len) {
    std::string w;
    for (int i = 0; i < len; ++i) w += EncodeUtf8(next++);
    return w;
  };
  lex.entity_words.resize(scheme.num_types());
  for (int type = 0; type < scheme.num_types(); ++type) {
    lex.entity_words[type] = {word(2), word(3), word(2)};
  }
  for (int i = 0; i < 16; ++i) lex.filler.push_back(word(1 + i % 2));
  return lex;
}

}  // namespace

std::vector<Sentence> MakeSyntheticCorpus(int num_sentences, std::uint64_t seed) {
  const TagScheme scheme = TagScheme::Default();
  const Lexicon lex = BuildLexicon(scheme);
  Rng rng(seed);
  std::uniform_int_distribution<int> words_per_sentence(3, 6);
  std::uniform_int_distribution<int> pick_type(0, scheme.num_types() - 1);
  std::uniform_int_distribution<int> pick_entity(0, 2);
  std::uniform_int_distribution<int> pick_filler(0, static_cast<int>(lex.filler.size()) - 1);
  std::bernoulli_distribution is_entity(0.4);

  std::vector<Sentence> out;
  for (int s = 0; s < num_sentences; ++s) {
    const int count = words_per_sentence(rng);
    std::vector<std::string> words;
    std::vector<int> types;  // -1 for filler
    for (int w = 0; w < count; ++w) {
      int type = -1;
      if (w == 1 && s < scheme.num_types()) {
        type = s;
      } else if (is_entity(rng)) {
        type = pick_type(rng);
      }
      words.push_back(type < 0 ? lex.filler[pick_filler(rng)]
                               : lex.entity_words[type][pick_entity(rng)]);
      types.push_back(type);
    }
    Sentence sentence = SentenceFromWords(words);
    std::vector<int> labels;
    for (size_t w = 0; w < words.size(); ++w) {
      const int len = static_cast<int>(SplitUtf8(words[w]).size());
      for (int i = 0; i < len; ++i) {
        labels.push_back(types[w] < 0 ? TagScheme::kOutside
                         : i == 0     ? scheme.BeginOf(types[w])
                                      : scheme.InsideOf(types[w]));
      }
    }
    sentence.gold_labels = std::move(labels);
    out.push_back(std::move(sentence));
  }
  return out;
}

std::string ToConll(const std::vector<Sentence>& sentences, const TagScheme& scheme) {
  std::vector<std::vector<int>> labels;
  for (const auto& s : sentences) labels.push_back(*s.gold_labels);
  std::ostringstream out;
  WriteConll(out, sentences, labels, scheme);
  return out.str();
}

std::vector<int> TruncateEntities(const std::vector<int>& gold, const TagScheme& scheme) {
  std::vector<int> out = gold;
  for (const auto& span : EntitiesFromLabels(gold, scheme)) out[span.end - 1] = TagScheme::kOutside;
  return out;
}

std::string WriteTempFile(const std::string& name, const std::string& contents) {
  auto dir = std::filesystem::temp_directory_path() / "mmner_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path, std::ios::binary) << contents;
  return path.string();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mmner::testing
